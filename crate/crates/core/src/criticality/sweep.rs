use rayon::prelude::*;

use crate::chain::{ground_states, FiniteChain, GroundStateBundle, ModelKind, ModelSpec};
use crate::correlators::{
    build_rho_pair, bundle_correlators, bundle_triple, ferro_correlators, ferro_triple,
    CorrelatorSet, TripleCorrelatorInput, XyFreeFermion,
};
use crate::criticality::detect::Probe;
use crate::criticality::diff::finite_diff_values;
use crate::criticality::entanglement::{concurrence_pair, concurrence_simplified, dwf_negativity};
use crate::error::{Error, Result};
use crate::phase_space::{
    dwf, dwf_pair_closed, dwf_single_closed, extremize_gwf, gwf, gwf_pair_closed,
    gwf_single_closed, gwf_triple_closed, matrix_sqrt, AngleConfig, PhasePoint,
};

/// Chain length used for XXZ sweeps unless told otherwise.
pub const DEFAULT_XXZ_SITES: usize = 16;
/// Fewest grid points a sweep may have.
pub const MIN_SWEEP_POINTS: usize = 64;
/// Most refinement levels a sweep may request.
pub const MAX_REFINEMENT_LEVELS: usize = 4;

/// Where correlators come from at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Free-fermion integrals for the infinite XY chain.
    ThermoLimit,
    /// Ground state of a periodic chain of `n_sites`; the XXZ ferromagnetic
    /// phase (Δ ≤ −1) uses its analytic correlators instead.
    ExactDiagonalization { n_sites: usize },
}

impl Backend {
    pub fn default_for(kind: ModelKind) -> Self {
        match kind {
            ModelKind::Xy => Backend::ThermoLimit,
            ModelKind::Xxz => Backend::ExactDiagonalization {
                n_sites: DEFAULT_XXZ_SITES,
            },
        }
    }
}

/// Quantity recorded at each grid point. Every variant yields one or more
/// named columns.
#[derive(Debug, Clone, PartialEq)]
pub enum Observable {
    /// One-site DWF at position `x` (the momentum label does not matter).
    DwfSingle { x: u32 },
    /// One-site GWF at polar angle `theta`.
    GwfSingle { theta: f64 },
    /// Two-site DWF at `point` for sites `m` apart, of ρ or of √ρ.
    DwfPair {
        point: PhasePoint,
        m: usize,
        sqrt: bool,
    },
    /// Two-site GWF for sites `m` apart, of ρ or of √ρ.
    GwfPair {
        config: AngleConfig,
        m: usize,
        sqrt: bool,
    },
    /// Three-site GWF for sites i, i+m_ij, i+m_ij+m_jk.
    GwfTriple {
        config: AngleConfig,
        m_ij: usize,
        m_jk: usize,
    },
    /// Largest and smallest two-site DWF value over all phase points.
    DwfExtremes { m: usize, sqrt: bool },
    /// Extrema of the two-site GWF over equal angles, with the arg-max and
    /// arg-min polar angles. U(1)-symmetric states only.
    GwfExtremes { m: usize },
    /// DWF negativity, concurrence, and the 2|xx| form of the concurrence.
    Entanglement { m: usize },
    /// max − min of the two-site GWF over the listed distances.
    GwfSpread {
        config: AngleConfig,
        distances: Vec<usize>,
    },
}

impl Observable {
    pub fn columns(&self) -> Vec<String> {
        let names: &[&str] = match self {
            Observable::DwfSingle { .. } | Observable::DwfPair { .. } => &["dwf"],
            Observable::GwfSingle { .. }
            | Observable::GwfPair { .. }
            | Observable::GwfTriple { .. } => &["gwf"],
            Observable::DwfExtremes { .. } => &["w_max", "w_min"],
            Observable::GwfExtremes { .. } => &["g_max", "g_min", "argmax_theta", "argmin_theta"],
            Observable::Entanglement { .. } => &["negativity", "concurrence", "concurrence_2xx"],
            Observable::GwfSpread { .. } => &["spread"],
        };
        names.iter().map(|s| s.to_string()).collect()
    }

    fn validate(&self) -> Result<()> {
        let sites = |n: usize, what: &str| -> Result<()> {
            if n != 2 && what == "pair" || n != 3 && what == "triple" {
                return Err(Error::InvalidSites(format!(
                    "{what} observable needs {} angle pairs, got {n}",
                    if what == "pair" { 2 } else { 3 }
                )));
            }
            Ok(())
        };
        let distance = |m: usize| -> Result<()> {
            if m == 0 {
                return Err(Error::InvalidSites(
                    "site distance must be at least 1".into(),
                ));
            }
            Ok(())
        };
        match self {
            Observable::DwfSingle { x } => {
                if *x > 1 {
                    return Err(Error::InvalidArgument(format!(
                        "one-site position {x} is not 0 or 1"
                    )));
                }
            }
            Observable::GwfSingle { .. } => {}
            Observable::DwfPair { point, m, .. } => {
                if point.n_qubits() != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        actual: point.n_qubits(),
                    });
                }
                distance(*m)?;
            }
            Observable::GwfPair { config, m, .. } => {
                sites(config.n_sites(), "pair")?;
                distance(*m)?;
            }
            Observable::GwfTriple { config, m_ij, m_jk } => {
                sites(config.n_sites(), "triple")?;
                distance(*m_ij)?;
                distance(*m_jk)?;
            }
            Observable::DwfExtremes { m, .. }
            | Observable::GwfExtremes { m }
            | Observable::Entanglement { m } => distance(*m)?,
            Observable::GwfSpread { config, distances } => {
                sites(config.n_sites(), "pair")?;
                if distances.len() < 2 {
                    return Err(Error::InvalidArgument(
                        "a spread needs at least two distances".into(),
                    ));
                }
                for &m in distances {
                    distance(m)?;
                }
            }
        }
        Ok(())
    }

    fn max_distance(&self) -> usize {
        match self {
            Observable::DwfSingle { .. } | Observable::GwfSingle { .. } => 1,
            Observable::DwfPair { m, .. }
            | Observable::GwfPair { m, .. }
            | Observable::DwfExtremes { m, .. }
            | Observable::GwfExtremes { m }
            | Observable::Entanglement { m } => *m,
            Observable::GwfTriple { m_ij, m_jk, .. } => m_ij + m_jk,
            Observable::GwfSpread { distances, .. } => distances.iter().copied().max().unwrap_or(1),
        }
    }
}

/// A sweep of one coupling over a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Family and fixed couplings; the swept coupling's own value is ignored.
    pub model: ModelSpec,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    /// Dyadic refinement levels available to detectors.
    pub refinement_levels: usize,
    pub observable: Observable,
    pub backend: Backend,
}

impl SweepSpec {
    pub fn new(model: ModelSpec, lo: f64, hi: f64, points: usize, observable: Observable) -> Self {
        Self {
            model,
            lo,
            hi,
            points,
            refinement_levels: 0,
            observable,
            backend: Backend::default_for(model.kind()),
        }
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_refinement(mut self, levels: usize) -> Self {
        self.refinement_levels = levels;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::InvalidArgument(format!(
                "sweep range [{}, {}] is empty or not finite",
                self.lo, self.hi
            )));
        }
        if self.points < MIN_SWEEP_POINTS {
            return Err(Error::InvalidArgument(format!(
                "{} grid points; a sweep needs at least {MIN_SWEEP_POINTS}",
                self.points
            )));
        }
        if self.refinement_levels > MAX_REFINEMENT_LEVELS {
            return Err(Error::InvalidArgument(format!(
                "{} refinement levels; at most {MAX_REFINEMENT_LEVELS} allowed",
                self.refinement_levels
            )));
        }
        self.model.with_parameter(self.lo)?;
        self.model.with_parameter(self.hi)?;
        validate_backend(&self.model, self.backend)?;
        self.observable.validate()?;
        if matches!(self.observable, Observable::GwfExtremes { .. })
            && self.model.kind() != ModelKind::Xxz
        {
            return Err(Error::InvalidArgument(
                "GWF extremes need a U(1)-symmetric, unmagnetized chain (XXZ)".into(),
            ));
        }
        if let Backend::ExactDiagonalization { n_sites } = self.backend {
            let span = self.observable.max_distance();
            if 2 * span >= n_sites {
                return Err(Error::InvalidSites(format!(
                    "sites {span} apart need a ring of more than {} sites",
                    2 * span
                )));
            }
        }
        Ok(())
    }

    /// Probe over one column of this sweep's observable.
    pub fn probe(&self, column: usize) -> Result<SweepProbe> {
        self.validate()?;
        SweepProbe::new(self.model, self.observable.clone(), self.backend, column)
    }
}

fn validate_backend(model: &ModelSpec, backend: Backend) -> Result<()> {
    match (model.kind(), backend) {
        (ModelKind::Xxz, Backend::ThermoLimit) => Err(Error::InvalidArgument(
            "XXZ correlators are only available from exact diagonalization".into(),
        )),
        (ModelKind::Xxz, Backend::ExactDiagonalization { n_sites }) if n_sites % 2 == 1 => {
            Err(Error::UnsupportedChain(format!(
                "XXZ ground states need an even number of sites, got {n_sites}"
            )))
        }
        (_, Backend::ExactDiagonalization { n_sites }) => FiniteChain::new(n_sites).map(|_| ()),
        _ => Ok(()),
    }
}

/// Values, first and second derivatives of every column on the sweep grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter_name: &'static str,
    pub grid: Vec<f64>,
    pub columns: Vec<String>,
    /// `values[c][i]`: column `c` at `grid[i]`.
    pub values: Vec<Vec<f64>>,
    pub d1: Vec<Vec<f64>>,
    pub d2: Vec<Vec<f64>>,
    pub refinement_levels: usize,
}

impl SweepResult {
    /// Grid spacing; fails if the grid is not uniform.
    pub fn spacing(&self) -> Result<f64> {
        grid_spacing(&self.grid)
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

pub(crate) fn grid_spacing(grid: &[f64]) -> Result<f64> {
    if grid.len() < 2 {
        return Err(Error::InvalidArgument(
            "grid has fewer than two points".into(),
        ));
    }
    let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    let tol = 1e-9 * h.abs().max(grid[0].abs().max(1.0) * 1e-6);
    for w in grid.windows(2) {
        if ((w[1] - w[0]) - h).abs() > tol.max(1e-12 * w[1].abs()) {
            return Err(Error::InvalidArgument("grid is not uniform".into()));
        }
    }
    Ok(h)
}

/// `points` values from `lo` to `hi` inclusive, evenly spaced.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let h = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + i as f64 * h
            }
        })
        .collect()
}

/// Runs the sweep on the coarse grid, in parallel, and returns the columns in
/// grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let grid = uniform_grid(spec.lo, spec.hi, spec.points);
    let rows = sample_rows(&spec.model, &spec.observable, spec.backend, &grid)?;
    let columns = spec.observable.columns();
    let values: Vec<Vec<f64>> = (0..columns.len())
        .map(|c| rows.iter().map(|r| r[c]).collect())
        .collect();
    let h = grid_spacing(&grid)?;
    let d1 = values
        .iter()
        .map(|v| finite_diff_values(v, h, 1))
        .collect::<Result<Vec<_>>>()?;
    let d2 = values
        .iter()
        .map(|v| finite_diff_values(v, h, 2))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        parameter_name: match spec.model.kind() {
            ModelKind::Xy => "lambda",
            ModelKind::Xxz => "delta",
        },
        grid,
        columns,
        values,
        d1,
        d2,
        refinement_levels: spec.refinement_levels,
    })
}

fn sample_rows(
    model: &ModelSpec,
    observable: &Observable,
    backend: Backend,
    grid: &[f64],
) -> Result<Vec<Vec<f64>>> {
    grid.par_iter()
        .map(|&x| {
            model
                .with_parameter(x)
                .and_then(|m| evaluate(&m, observable, backend))
                .map_err(|e| Error::AtGridPoint {
                    parameter: x,
                    source: Box::new(e),
                })
        })
        .collect()
}

// Correlator provider at one parameter value.
enum Provider {
    Thermo(XyFreeFermion),
    Ed(GroundStateBundle),
    Ferro,
}

impl Provider {
    fn new(model: &ModelSpec, backend: Backend, max_r: usize) -> Result<Self> {
        validate_backend(model, backend)?;
        match (*model, backend) {
            (ModelSpec::Xy { lambda, gamma }, Backend::ThermoLimit) => {
                Ok(Provider::Thermo(XyFreeFermion::new(lambda, gamma, max_r)?))
            }
            (ModelSpec::Xxz { delta }, _) if delta <= -1.0 => Ok(Provider::Ferro),
            (_, Backend::ExactDiagonalization { n_sites }) => {
                let chain = FiniteChain::new(n_sites)?;
                Ok(Provider::Ed(ground_states(model, &chain)?))
            }
            _ => unreachable!("backend checked above"),
        }
    }

    fn pair(&self, m: usize) -> Result<CorrelatorSet> {
        match self {
            Provider::Thermo(ff) => ff.correlators(m),
            Provider::Ed(b) => bundle_correlators(b, m),
            Provider::Ferro => Ok(ferro_correlators(m)),
        }
    }

    fn triple(&self, m_ij: usize, m_jk: usize) -> Result<TripleCorrelatorInput> {
        match self {
            Provider::Thermo(ff) => ff.triple(m_ij, m_jk),
            Provider::Ed(b) => bundle_triple(b, m_ij, m_jk),
            Provider::Ferro => Ok(ferro_triple(m_ij, m_jk)),
        }
    }

    fn mz(&self) -> Result<f64> {
        match self {
            Provider::Thermo(ff) => Ok(ff.mz()),
            _ => Ok(self.pair(1)?.mz),
        }
    }
}

/// The observable's columns for one fully specified model.
pub fn evaluate(model: &ModelSpec, observable: &Observable, backend: Backend) -> Result<Vec<f64>> {
    observable.validate()?;
    let provider = Provider::new(model, backend, observable.max_distance())?;
    match observable {
        Observable::DwfSingle { x } => Ok(vec![dwf_single_closed(provider.mz()?, *x)]),
        Observable::GwfSingle { theta } => Ok(vec![gwf_single_closed(provider.mz()?, *theta)]),
        Observable::DwfPair { point, m, sqrt } => {
            let c = provider.pair(*m)?;
            if *sqrt {
                let root = matrix_sqrt(&build_rho_pair(&c)?)?;
                Ok(vec![dwf(&root)?.get(*point)])
            } else {
                Ok(vec![dwf_pair_closed(&c, *point)?])
            }
        }
        Observable::GwfPair { config, m, sqrt } => {
            let c = provider.pair(*m)?;
            if *sqrt {
                let root = matrix_sqrt(&build_rho_pair(&c)?)?;
                Ok(vec![gwf(&root, config)?])
            } else {
                Ok(vec![gwf_pair_closed(&c, config)?])
            }
        }
        Observable::GwfTriple { config, m_ij, m_jk } => {
            let t = provider.triple(*m_ij, *m_jk)?;
            Ok(vec![gwf_triple_closed(&t, config)?])
        }
        Observable::DwfExtremes { m, sqrt } => {
            let c = provider.pair(*m)?;
            let grid = if *sqrt {
                dwf(&matrix_sqrt(&build_rho_pair(&c)?)?)?
            } else {
                dwf(&build_rho_pair(&c)?)?
            };
            Ok(vec![grid.max(), grid.min()])
        }
        Observable::GwfExtremes { m } => {
            let e = extremize_gwf(&provider.pair(*m)?)?;
            Ok(vec![e.max, e.min, e.argmax.theta(0), e.argmin.theta(0)])
        }
        Observable::Entanglement { m } => {
            let c = provider.pair(*m)?;
            let grid = dwf(&build_rho_pair(&c)?)?;
            Ok(vec![
                dwf_negativity(&grid),
                concurrence_pair(&c)?,
                concurrence_simplified(&c),
            ])
        }
        Observable::GwfSpread { config, distances } => {
            let vals = distances
                .iter()
                .map(|&m| gwf_pair_closed(&provider.pair(m)?, config))
                .collect::<Result<Vec<_>>>()?;
            let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
            Ok(vec![max - min])
        }
    }
}

/// Samples one column of an observable on arbitrary uniform grids; used by
/// detectors to refine.
#[derive(Debug, Clone)]
pub struct SweepProbe {
    model: ModelSpec,
    observable: Observable,
    backend: Backend,
    column: usize,
}

impl SweepProbe {
    pub fn new(
        model: ModelSpec,
        observable: Observable,
        backend: Backend,
        column: usize,
    ) -> Result<Self> {
        observable.validate()?;
        validate_backend(&model, backend)?;
        let n_cols = observable.columns().len();
        if column >= n_cols {
            return Err(Error::InvalidArgument(format!(
                "column {column} out of range for {n_cols} columns"
            )));
        }
        Ok(Self {
            model,
            observable,
            backend,
            column,
        })
    }
}

impl Probe for SweepProbe {
    fn sample(&self, lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
        let grid = uniform_grid(lo, hi, points);
        let rows = sample_rows(&self.model, &self.observable, self.backend, &grid)?;
        Ok(rows.into_iter().map(|r| r[self.column]).collect())
    }
}
