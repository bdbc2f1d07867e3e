use crate::error::{Error, Result};

/// Where a correlator set came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    ThermoLimit,
    FiniteEd,
    FerroAnalytic,
    Synthetic,
}

const RANGE_TOL: f64 = 1e-12;
/// Smallest eigenvalue allowed for the assembled two-site state.
pub const PHYSICAL_TOL: f64 = 1e-9;

/// ⟨σ^z⟩ and the three diagonal correlators at lattice distance `distance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorSet {
    pub mz: f64,
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    pub distance: usize,
    pub source: Source,
}

impl CorrelatorSet {
    /// Validates the range of every entry and physicality of the implied
    /// two-site state.
    pub fn new(
        mz: f64,
        xx: f64,
        yy: f64,
        zz: f64,
        distance: usize,
        source: Source,
    ) -> Result<Self> {
        let c = Self {
            mz,
            xx,
            yy,
            zz,
            distance,
            source,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mz", self.mz),
            ("xx", self.xx),
            ("yy", self.yy),
            ("zz", self.zz),
        ] {
            if !v.is_finite() || v.abs() > 1.0 + RANGE_TOL {
                return Err(Error::Unphysical(format!("{name} = {v} outside [-1, 1]")));
            }
        }
        let lowest = self.min_pair_eigenvalue();
        if lowest < -PHYSICAL_TOL {
            return Err(Error::Unphysical(format!(
                "pair state has eigenvalue {lowest:.3e}"
            )));
        }
        Ok(())
    }

    /// Eigenvalues of the Z₂-symmetric pair state in closed form: it splits
    /// into the {|00⟩,|11⟩} and {|01⟩,|10⟩} blocks.
    pub fn pair_eigenvalues(&self) -> [f64; 4] {
        let Self { mz, xx, yy, zz, .. } = *self;
        let a = (1.0 + zz) / 4.0;
        let b = (1.0 - zz) / 4.0;
        let r_even = ((mz / 2.0).powi(2) + ((xx - yy) / 4.0).powi(2)).sqrt();
        let r_odd = (xx + yy).abs() / 4.0;
        [a - r_even, a + r_even, b - r_odd, b + r_odd]
    }

    pub fn min_pair_eigenvalue(&self) -> f64 {
        self.pair_eigenvalues()
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn zero(distance: usize) -> Self {
        Self {
            mz: 0.0,
            xx: 0.0,
            yy: 0.0,
            zz: 0.0,
            distance,
            source: Source::Synthetic,
        }
    }
}

/// Three-point functions of sites i < j < k that survive Z₂ symmetry and
/// reality. Letters give the operator on i, j, k in order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThreePoint {
    pub zzz: f64,
    pub xxz: f64,
    pub yyz: f64,
    pub xzx: f64,
    pub yzy: f64,
    pub zxx: f64,
    pub zyy: f64,
}

/// Everything needed for the three-site reduced state of sites i < j < k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripleCorrelatorInput {
    pub mz: f64,
    pub ij: CorrelatorSet,
    pub jk: CorrelatorSet,
    pub ik: CorrelatorSet,
    pub three: ThreePoint,
}

impl TripleCorrelatorInput {
    pub fn new(
        mz: f64,
        ij: CorrelatorSet,
        jk: CorrelatorSet,
        ik: CorrelatorSet,
        three: ThreePoint,
    ) -> Result<Self> {
        let t = Self {
            mz,
            ij,
            jk,
            ik,
            three,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ik.distance != self.ij.distance + self.jk.distance {
            return Err(Error::InvalidArgument(format!(
                "distances are not collinear: {} + {} != {}",
                self.ij.distance, self.jk.distance, self.ik.distance
            )));
        }
        for pair in [&self.ij, &self.jk, &self.ik] {
            if (pair.mz - self.mz).abs() > 1e-12 {
                return Err(Error::InvalidArgument(
                    "pair magnetizations disagree with the triple magnetization".into(),
                ));
            }
        }
        Ok(())
    }

    /// All inputs zero: the maximally mixed three-site state.
    pub fn zero(m_ij: usize, m_jk: usize) -> Self {
        Self {
            mz: 0.0,
            ij: CorrelatorSet::zero(m_ij),
            jk: CorrelatorSet::zero(m_jk),
            ik: CorrelatorSet::zero(m_ij + m_jk),
            three: ThreePoint::default(),
        }
    }
}
