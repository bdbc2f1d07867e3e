use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use nalgebra::DMatrix;

use crate::correlators::{CorrelatorSet, TripleCorrelatorInput};
use crate::error::{Error, Result};
use crate::pauli::{kron_all, Pauli, C64};
use crate::phase_space::operator::{qubits_of, trace_product, AsOperator};

const SQRT3: f64 = 1.732_050_807_568_877_2;
const ANGLE_TOL: f64 = 1e-12;

/// Per-site Euler angles (θ, φ) with θ ∈ [0, π/2] and φ ∈ [0, 2π].
#[derive(Debug, Clone, PartialEq)]
pub struct AngleConfig {
    angles: Vec<(f64, f64)>,
}

impl AngleConfig {
    pub fn new(angles: Vec<(f64, f64)>) -> Result<Self> {
        if angles.is_empty() || angles.len() > 3 {
            return Err(Error::InvalidArgument(format!(
                "angle configuration for {} sites; 1 to 3 supported",
                angles.len()
            )));
        }
        for &(theta, phi) in &angles {
            if !(-ANGLE_TOL..=FRAC_PI_2 + ANGLE_TOL).contains(&theta) {
                return Err(Error::InvalidArgument(format!(
                    "theta {theta} outside [0, pi/2]"
                )));
            }
            if !(-ANGLE_TOL..=2.0 * PI + ANGLE_TOL).contains(&phi) {
                return Err(Error::InvalidArgument(format!(
                    "phi {phi} outside [0, 2pi]"
                )));
            }
        }
        Ok(Self { angles })
    }

    pub fn from_lists(thetas: &[f64], phis: &[f64]) -> Result<Self> {
        if thetas.len() != phis.len() {
            return Err(Error::InvalidArgument(format!(
                "{} theta values but {} phi values",
                thetas.len(),
                phis.len()
            )));
        }
        Self::new(thetas.iter().copied().zip(phis.iter().copied()).collect())
    }

    /// The same (θ, φ) on every one of `n` sites.
    pub fn uniform(n: usize, theta: f64, phi: f64) -> Result<Self> {
        Self::new(vec![(theta, phi); n])
    }

    pub fn n_sites(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[(f64, f64)] {
        &self.angles
    }

    pub fn theta(&self, site: usize) -> f64 {
        self.angles[site].0
    }

    pub fn phi(&self, site: usize) -> f64 {
        self.angles[site].1
    }
}

/// Unit vector n̂ of the single-site kernel ½(1 − √3 n̂·σ⃗) obtained from
/// U = e^{iσ^zφ} e^{iσ^yθ}: (−sin2θ cos2φ, sin2θ sin2φ, cos2θ).
pub fn kernel_direction(theta: f64, phi: f64) -> [f64; 3] {
    let (s2t, c2t) = (2.0 * theta).sin_cos();
    let (s2p, c2p) = (2.0 * phi).sin_cos();
    [-s2t * c2p, s2t * s2p, c2t]
}

#[derive(Debug, Clone, PartialEq)]
pub struct GwfKernel {
    pub matrix: DMatrix<C64>,
    pub config: AngleConfig,
}

fn site_kernel(theta: f64, phi: f64) -> DMatrix<C64> {
    let (st, ct) = theta.sin_cos();
    let rz = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::from_polar(1.0, phi),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::from_polar(1.0, -phi),
        ],
    );
    // e^{iσ^yθ} = cosθ + i sinθ σ^y.
    let ry = DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(ct, 0.0),
            C64::new(st, 0.0),
            C64::new(-st, 0.0),
            C64::new(ct, 0.0),
        ],
    );
    let u = rz * ry;
    let parity =
        (Pauli::I.matrix() - Pauli::Z.matrix() * C64::new(SQRT3, 0.0)) * C64::new(0.5, 0.0);
    &u * parity * u.adjoint()
}

/// Tensor product of the rotated single-site kernels U Π U†, Π = ½(1 − √3 σ^z).
pub fn gwf_kernel(config: &AngleConfig) -> GwfKernel {
    let factors: Vec<DMatrix<C64>> = config
        .angles()
        .iter()
        .map(|&(t, p)| site_kernel(t, p))
        .collect();
    GwfKernel {
        matrix: kron_all(&factors),
        config: config.clone(),
    }
}

/// Weyl rule W = Tr(op Δ(Ω)).
pub fn gwf(op: &impl AsOperator, config: &AngleConfig) -> Result<f64> {
    let m = op.as_complex();
    let n = qubits_of(&m)?;
    if n != config.n_sites() {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: config.n_sites(),
        });
    }
    let w = trace_product(&m, &gwf_kernel(config).matrix);
    let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if w.im.abs() > 1e-12 * scale {
        return Err(Error::Unphysical(format!(
            "Wigner value has imaginary part {:.3e}; operator not Hermitian",
            w.im
        )));
    }
    Ok(w.re)
}

/// ½(1 − √3 cos2θ ⟨σ^z⟩).
pub fn gwf_single_closed(mz: f64, theta: f64) -> f64 {
    0.5 * (1.0 - SQRT3 * (2.0 * theta).cos() * mz)
}

fn expect_sites(config: &AngleConfig, n: usize) -> Result<()> {
    if config.n_sites() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: config.n_sites(),
        });
    }
    Ok(())
}

/// ¼[1 − √3 mz (c_i + c_j) + 3(n^x_i n^x_j xx + n^y_i n^y_j yy + c_i c_j zz)],
/// c = cos2θ and n̂ from [`kernel_direction`].
pub fn gwf_pair_closed(c: &CorrelatorSet, config: &AngleConfig) -> Result<f64> {
    expect_sites(config, 2)?;
    let a = kernel_direction(config.theta(0), config.phi(0));
    let b = kernel_direction(config.theta(1), config.phi(1));
    Ok(0.25
        * (1.0 - SQRT3 * c.mz * (a[2] + b[2])
            + 3.0 * (a[0] * b[0] * c.xx + a[1] * b[1] * c.yy + a[2] * b[2] * c.zz)))
}

/// U(1)-symmetric specialization (xx = yy, mz = 0):
/// ¼[1 + 3 cos2θ_i cos2θ_j zz + 3 sin2θ_i sin2θ_j cos2(φ_i − φ_j) xx].
pub fn gwf_xxz_closed(c: &CorrelatorSet, config: &AngleConfig) -> Result<f64> {
    expect_sites(config, 2)?;
    if (c.xx - c.yy).abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "xx = {} and yy = {} differ; the symmetric form does not apply",
            c.xx, c.yy
        )));
    }
    if c.mz.abs() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "mz = {} is nonzero; the symmetric form does not apply",
            c.mz
        )));
    }
    let (ti, pi) = config.angles()[0];
    let (tj, pj) = config.angles()[1];
    Ok(0.25
        * (1.0
            + 3.0 * (2.0 * ti).cos() * (2.0 * tj).cos() * c.zz
            + 3.0 * (2.0 * ti).sin() * (2.0 * tj).sin() * (2.0 * (pi - pj)).cos() * c.xx))
}

/// Three-site value Tr(ρ_ijk Δ⊗Δ⊗Δ) expanded over the twenty surviving
/// Pauli strings.
pub fn gwf_triple_closed(t: &TripleCorrelatorInput, config: &AngleConfig) -> Result<f64> {
    expect_sites(config, 3)?;
    let [a, b, c] = [0, 1, 2].map(|s| kernel_direction(config.theta(s), config.phi(s)));
    let th = &t.three;
    let single = -SQRT3 * t.mz * (a[2] + b[2] + c[2]);
    let pair = |u: &[f64; 3], v: &[f64; 3], s: &CorrelatorSet| {
        u[0] * v[0] * s.xx + u[1] * v[1] * s.yy + u[2] * v[2] * s.zz
    };
    let pairs = 3.0 * (pair(&a, &b, &t.ij) + pair(&b, &c, &t.jk) + pair(&a, &c, &t.ik));
    let triples = -3.0
        * SQRT3
        * (a[2] * b[2] * c[2] * th.zzz
            + a[0] * b[0] * c[2] * th.xxz
            + a[1] * b[1] * c[2] * th.yyz
            + a[0] * b[2] * c[0] * th.xzx
            + a[1] * b[2] * c[1] * th.yzy
            + a[2] * b[0] * c[0] * th.zxx
            + a[2] * b[1] * c[1] * th.zyy);
    Ok(0.125 * (1.0 + single + pairs + triples))
}

/// Which end of the θ search interval an optimum sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaBranch {
    QuarterPi,
    HalfPi,
    Interior,
}

impl ThetaBranch {
    pub fn of(theta: f64) -> Self {
        if (theta - FRAC_PI_4).abs() < 1e-6 {
            ThetaBranch::QuarterPi
        } else if (theta - FRAC_PI_2).abs() < 1e-6 {
            ThetaBranch::HalfPi
        } else {
            ThetaBranch::Interior
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ThetaBranch::QuarterPi => "pi/4",
            ThetaBranch::HalfPi => "pi/2",
            ThetaBranch::Interior => "interior",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GwfExtremum {
    pub max: f64,
    pub argmax: AngleConfig,
    pub min: f64,
    pub argmin: AngleConfig,
}

impl GwfExtremum {
    pub fn max_branch(&self) -> ThetaBranch {
        ThetaBranch::of(self.argmax.theta(0))
    }

    pub fn min_branch(&self) -> ThetaBranch {
        ThetaBranch::of(self.argmin.theta(0))
    }
}

const TIE_TOL: f64 = 1e-12;

fn golden_section(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-10 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

// Minimizes `f` over [π/4, π/2]: coarse grid, then golden-section refinement
// next to the best node; near-ties go to the smaller θ.
fn minimize_theta(f: &dyn Fn(f64) -> f64) -> f64 {
    let grid = [FRAC_PI_4, 3.0 * PI / 8.0, FRAC_PI_2];
    let vals = grid.map(f);
    let mut best = 0;
    for k in 1..grid.len() {
        if vals[k] < vals[best] - TIE_TOL {
            best = k;
        }
    }
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let refined = golden_section(f, lo, hi);
    let mut candidates = [(grid[best], vals[best]), (refined, f(refined))];
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut choice = candidates[0];
    for &(t, v) in &candidates[1..] {
        if v < choice.1 - TIE_TOL {
            choice = (t, v);
        }
    }
    choice.0
}

/// Extremizes the two-site GWF of a U(1)-symmetric state over equal angles on
/// both sites (θ_i = θ_j, φ_i = φ_j = 0).
///
/// The objective is symmetric under θ → π/2 − θ, so the search runs over
/// θ ∈ [π/4, π/2]; optima are reported on the π/4 or π/2 branch.
pub fn extremize_gwf(c: &CorrelatorSet) -> Result<GwfExtremum> {
    if (c.xx - c.yy).abs() > 1e-9 || c.mz.abs() > 1e-9 {
        return Err(Error::InvalidArgument(
            "extremization expects xx = yy and mz = 0".into(),
        ));
    }
    let value = |theta: f64| {
        let cfg = AngleConfig::uniform(2, theta, 0.0).expect("theta within range");
        gwf_pair_closed(c, &cfg).expect("two-site configuration")
    };
    let tmin = minimize_theta(&value);
    let tmax = minimize_theta(&|t| -value(t));
    Ok(GwfExtremum {
        max: value(tmax),
        argmax: AngleConfig::uniform(2, tmax, 0.0)?,
        min: value(tmin),
        argmin: AngleConfig::uniform(2, tmin, 0.0)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::{build_rho_single, ferro_correlators, Source};

    fn close(a: &DMatrix<C64>, b: &DMatrix<C64>, tol: f64) -> bool {
        (a - b).map(|z| z.norm()).max() <= tol
    }

    #[test]
    fn unrotated_kernel_is_parity() {
        let k = gwf_kernel(&AngleConfig::uniform(1, 0.0, 0.0).unwrap()).matrix;
        let expected =
            (Pauli::I.matrix() - Pauli::Z.matrix() * C64::new(SQRT3, 0.0)) * C64::new(0.5, 0.0);
        assert!(close(&k, &expected, 1e-15));
    }

    #[test]
    fn kernel_matches_direction_vector() {
        for i in 0..10 {
            for j in 0..10 {
                let (t, p) = (FRAC_PI_2 * i as f64 / 9.0, 2.0 * PI * j as f64 / 9.0);
                let k = gwf_kernel(&AngleConfig::uniform(1, t, p).unwrap()).matrix;
                let n = kernel_direction(t, p);
                let ns = Pauli::X.matrix() * C64::new(n[0], 0.0)
                    + Pauli::Y.matrix() * C64::new(n[1], 0.0)
                    + Pauli::Z.matrix() * C64::new(n[2], 0.0);
                let expected = (Pauli::I.matrix() - ns * C64::new(SQRT3, 0.0)) * C64::new(0.5, 0.0);
                assert!(close(&k, &expected, 1e-12));
                // Eigenvalues of a 2x2 Hermitian matrix.
                let (a, d, b) = (k[(0, 0)].re, k[(1, 1)].re, k[(0, 1)].norm());
                let r = (0.25 * (a - d).powi(2) + b * b).sqrt();
                let (lo, hi) = (0.5 * (a + d) - r, 0.5 * (a + d) + r);
                assert!((lo - (1.0 - SQRT3) / 2.0).abs() < 1e-12);
                assert!((hi - (1.0 + SQRT3) / 2.0).abs() < 1e-12);
                let tr = k.trace();
                assert!((tr.re - 1.0).abs() < 1e-14 && tr.im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn simple_values() {
        let half = DMatrix::<f64>::identity(2, 2) * 0.5;
        let cfg = AngleConfig::uniform(1, 0.7, 1.1).unwrap();
        assert!((gwf(&half, &cfg).unwrap() - 0.5).abs() < 1e-15);
        let up = build_rho_single(1.0).unwrap();
        let w = gwf(&up, &AngleConfig::uniform(1, 0.0, 0.0).unwrap()).unwrap();
        assert!((w - (1.0 - SQRT3) / 2.0).abs() < 1e-15);
        assert!((gwf_single_closed(0.3, FRAC_PI_4) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pair_closed_z_sector() {
        let c = CorrelatorSet::new(0.4, 0.1, -0.05, 0.3, 1, Source::Synthetic).unwrap();
        let cfg = AngleConfig::uniform(2, 0.0, 0.0).unwrap();
        let expected = 0.25 * (1.0 - 2.0 * SQRT3 * c.mz + 3.0 * c.zz);
        assert!((gwf_pair_closed(&c, &cfg).unwrap() - expected).abs() < 1e-15);
        assert!((gwf_pair_closed(&CorrelatorSet::zero(1), &cfg).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn xxz_form_checks() {
        let ferro = ferro_correlators(1);
        let cfg = AngleConfig::new(vec![(0.3, 0.2), (0.9, 1.7)]).unwrap();
        let expected = 0.25 * (1.0 + 3.0 * 0.6f64.cos() * 1.8f64.cos());
        assert!((gwf_xxz_closed(&ferro, &cfg).unwrap() - expected).abs() < 1e-15);
        let bad = CorrelatorSet::new(0.0, 0.1, 0.2, 0.0, 1, Source::Synthetic).unwrap();
        assert!(gwf_xxz_closed(&bad, &cfg).is_err());
    }

    #[test]
    fn extremize_ferro_and_xx_only() {
        let e = extremize_gwf(&ferro_correlators(1)).unwrap();
        assert!((e.max - 1.0).abs() < 1e-12);
        assert_eq!(e.max_branch(), ThetaBranch::HalfPi);
        let c = CorrelatorSet::new(0.0, 0.2, 0.2, 0.0, 1, Source::Synthetic).unwrap();
        let e = extremize_gwf(&c).unwrap();
        assert_eq!(e.max_branch(), ThetaBranch::QuarterPi);
        assert!((e.max - 0.25 * (1.0 + 0.6)).abs() < 1e-12);
    }

    #[test]
    fn extremize_ties_pick_lower_theta() {
        let c = CorrelatorSet::new(0.0, -0.3, -0.3, -0.3, 1, Source::Synthetic).unwrap();
        let e = extremize_gwf(&c).unwrap();
        assert_eq!(e.max_branch(), ThetaBranch::QuarterPi);
        assert_eq!(e.min_branch(), ThetaBranch::QuarterPi);
    }

    #[test]
    fn angle_validation() {
        assert!(AngleConfig::uniform(2, 2.0, 0.0).is_err());
        assert!(AngleConfig::uniform(2, 0.1, 7.0).is_err());
        assert!(AngleConfig::from_lists(&[0.1], &[0.1, 0.2]).is_err());
        assert!(AngleConfig::uniform(2, FRAC_PI_2, 2.0 * PI).is_ok());
    }
}
