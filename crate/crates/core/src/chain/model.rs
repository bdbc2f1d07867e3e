use crate::error::{Error, Result};

/// Largest chain handled by the iterative solver.
pub const MAX_SITES: usize = 20;
/// Largest chain for which a full dense diagonalization is allowed.
pub const MAX_DENSE_SITES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Xy,
    Xxz,
}

/// Chain family and couplings.
///
/// `Xy`: H = −(λ/2) Σ [(1+γ) σ^xσ^x + (1−γ) σ^yσ^y] − Σ σ^z.
/// `Xxz`: H = (1/4) Σ [σ^xσ^x + σ^yσ^y + Δ σ^zσ^z].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Xy { lambda: f64, gamma: f64 },
    Xxz { delta: f64 },
}

impl ModelSpec {
    pub fn xy(lambda: f64, gamma: f64) -> Result<Self> {
        let m = ModelSpec::Xy { lambda, gamma };
        m.validate()?;
        Ok(m)
    }

    pub fn xxz(delta: f64) -> Result<Self> {
        let m = ModelSpec::Xxz { delta };
        m.validate()?;
        Ok(m)
    }

    /// Builds a model from loose fields, rejecting fields that do not belong
    /// to `kind` and missing ones that do.
    pub fn from_fields(
        kind: ModelKind,
        lambda: Option<f64>,
        gamma: Option<f64>,
        delta: Option<f64>,
    ) -> Result<Self> {
        match kind {
            ModelKind::Xy => {
                if delta.is_some() {
                    return Err(Error::InvalidModel("delta is not an XY coupling".into()));
                }
                match (lambda, gamma) {
                    (Some(l), Some(g)) => Self::xy(l, g),
                    _ => Err(Error::InvalidModel("XY needs both lambda and gamma".into())),
                }
            }
            ModelKind::Xxz => {
                if lambda.is_some() || gamma.is_some() {
                    return Err(Error::InvalidModel(
                        "lambda and gamma are not XXZ couplings".into(),
                    ));
                }
                match delta {
                    Some(d) => Self::xxz(d),
                    None => Err(Error::InvalidModel("XXZ needs delta".into())),
                }
            }
        }
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            ModelSpec::Xy { .. } => ModelKind::Xy,
            ModelSpec::Xxz { .. } => ModelKind::Xxz,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelSpec::Xy { lambda, gamma } => {
                if !lambda.is_finite() || lambda < 0.0 {
                    return Err(Error::InvalidModel(format!(
                        "lambda must be >= 0, got {lambda}"
                    )));
                }
                if !(0.0..=1.0).contains(&gamma) {
                    return Err(Error::InvalidModel(format!(
                        "gamma must lie in [0, 1], got {gamma}"
                    )));
                }
            }
            ModelSpec::Xxz { delta } => {
                if !delta.is_finite() {
                    return Err(Error::InvalidModel(format!(
                        "delta must be finite, got {delta}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The swept coupling: λ for XY, Δ for XXZ.
    pub fn parameter(&self) -> f64 {
        match *self {
            ModelSpec::Xy { lambda, .. } => lambda,
            ModelSpec::Xxz { delta } => delta,
        }
    }

    /// Same family and fixed couplings with the swept coupling replaced.
    pub fn with_parameter(&self, value: f64) -> Result<Self> {
        match *self {
            ModelSpec::Xy { gamma, .. } => Self::xy(value, gamma),
            ModelSpec::Xxz { .. } => Self::xxz(value),
        }
    }
}

/// Periodic chain of `n_sites` spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteChain {
    n_sites: usize,
}

impl FiniteChain {
    pub fn new(n_sites: usize) -> Result<Self> {
        if !(2..=MAX_SITES).contains(&n_sites) {
            return Err(Error::UnsupportedChain(format!(
                "{n_sites} sites; supported range is 2..={MAX_SITES}"
            )));
        }
        Ok(Self { n_sites })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn hilbert_dim(&self) -> usize {
        1 << self.n_sites
    }
}
