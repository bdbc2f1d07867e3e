//! Thermodynamic-limit XY correlators from the Jordan–Wigner/Bogoliubov
//! solution.
//!
//! With Λ(k) = √((1 − λ cos k)² + (λγ sin k)²) the one-body function is
//! G(r) = (1/π) ∫₀^π [−cos(kr)(1 − λ cos k) + λγ sin(kr) sin k] / Λ(k) dk,
//! and ⟨σ^z⟩ = −G(0), ⟨σ^xσ^x⟩_m = det[G(l − j + 1)], ⟨σ^yσ^y⟩_m =
//! det[G(l − j − 1)] (j, l < m), ⟨σ^zσ^z⟩_m = ⟨σ^z⟩² − G(m) G(−m).

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::correlators::set::{CorrelatorSet, Source, ThreePoint, TripleCorrelatorInput};
use crate::correlators::wick::{MajoranaWord, WickContractions};
use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_vec, QuadratureOptions};
use crate::pauli::Pauli;

/// Target accuracy of G(r); tight enough for second differences on fine grids.
const G_ABS_TOL: f64 = 1e-13;
/// Fallback accuracy if the tight target cannot be met within the panel cap.
const G_ABS_TOL_FALLBACK: f64 = 1e-10;

/// Tabulated G(r), |r| ≤ `max_r`, for one (λ, γ).
#[derive(Debug, Clone)]
pub struct XyFreeFermion {
    lambda: f64,
    gamma: f64,
    max_r: usize,
    // g[max_r + r] = G(r)
    g: Vec<f64>,
    quadrature_error: f64,
}

impl XyFreeFermion {
    pub fn new(lambda: f64, gamma: f64, max_r: usize) -> Result<Self> {
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
        let comps = 2 * (max_r + 1);
        let integrand = |k: f64, out: &mut [f64]| {
            let (s, c) = k.sin_cos();
            let a = 1.0 - lambda * c;
            let b = lambda * gamma * s;
            let big_lambda = a.hypot(b);
            if big_lambda == 0.0 {
                out.fill(0.0);
                return;
            }
            let (wc, ws) = (a / big_lambda, b / big_lambda);
            // cos(rk), sin(rk) by the Chebyshev recurrence.
            let (mut c_prev, mut c_cur) = (c, 1.0);
            let (mut s_prev, mut s_cur) = (-s, 0.0);
            for r in 0..=max_r {
                out[2 * r] = c_cur * wc;
                out[2 * r + 1] = s_cur * ws;
                let c_next = 2.0 * c * c_cur - c_prev;
                let s_next = 2.0 * c * s_cur - s_prev;
                c_prev = c_cur;
                c_cur = c_next;
                s_prev = s_cur;
                s_cur = s_next;
            }
        };

        // Integrate piecewise so a zero of Λ (γ = 0, λ ≥ 1) sits on a panel edge.
        let mut breaks = vec![0.0];
        if gamma == 0.0 && lambda > 1.0 {
            breaks.push((1.0 / lambda).acos());
        }
        breaks.push(PI);

        let mut sums = vec![0.0; comps];
        let mut error = 0.0;
        for w in breaks.windows(2) {
            let opts = QuadratureOptions {
                abs_tol: G_ABS_TOL / (breaks.len() - 1) as f64,
                ..Default::default()
            };
            let r = match integrate_vec(integrand, w[0], w[1], comps, opts) {
                Ok(r) => r,
                Err(_) => integrate_vec(
                    integrand,
                    w[0],
                    w[1],
                    comps,
                    QuadratureOptions {
                        abs_tol: G_ABS_TOL_FALLBACK,
                        ..Default::default()
                    },
                )?,
            };
            sums.iter_mut().zip(&r.values).for_each(|(s, v)| *s += v);
            error += r.error;
        }

        let mut g = vec![0.0; 2 * max_r + 1];
        for r in 0..=max_r {
            let cr = sums[2 * r] / PI;
            let sr = sums[2 * r + 1] / PI;
            g[max_r + r] = -cr + sr;
            g[max_r - r] = -cr - sr;
        }
        Ok(Self {
            lambda,
            gamma,
            max_r,
            g,
            quadrature_error: error / PI,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn max_distance(&self) -> usize {
        self.max_r
    }

    pub fn quadrature_error(&self) -> f64 {
        self.quadrature_error
    }

    /// G(r). Panics if |r| exceeds the tabulated range.
    pub fn g_at(&self, r: i64) -> f64 {
        assert!(
            r.unsigned_abs() as usize <= self.max_r,
            "G({r}) outside tabulated range ±{}",
            self.max_r
        );
        self.g[(self.max_r as i64 + r) as usize]
    }

    pub fn mz(&self) -> f64 {
        -self.g_at(0)
    }

    fn toeplitz_det(&self, m: usize, offset: i64) -> f64 {
        let t = DMatrix::from_fn(m, m, |j, l| self.g_at(l as i64 - j as i64 + offset));
        t.determinant()
    }

    /// Correlators at distance `m` (1 ≤ m ≤ max distance).
    pub fn correlators(&self, m: usize) -> Result<CorrelatorSet> {
        if m == 0 || m > self.max_r {
            return Err(Error::InvalidArgument(format!(
                "distance {m} outside 1..={}",
                self.max_r
            )));
        }
        let mz = self.mz();
        let xx = self.toeplitz_det(m, 1);
        let yy = self.toeplitz_det(m, -1);
        let zz = mz * mz - self.g_at(m as i64) * self.g_at(-(m as i64));
        CorrelatorSet::new(mz, xx, yy, zz, m, Source::ThermoLimit)
    }

    /// ⟨∏ P_s⟩ by Wick's theorem; sites must span at most `max_r`.
    pub fn string_expectation(&self, ops: &[(usize, Pauli)]) -> f64 {
        MajoranaWord::pauli_string(ops).expectation(self).re
    }

    /// Three-site input for sites 0, m_ij, m_ij + m_jk.
    pub fn triple(&self, m_ij: usize, m_jk: usize) -> Result<TripleCorrelatorInput> {
        let (i, j, k) = (0, m_ij, m_ij + m_jk);
        if k > self.max_r {
            return Err(Error::InvalidArgument(format!(
                "triple span {k} exceeds tabulated range {}",
                self.max_r
            )));
        }
        let e = |a: Pauli, b: Pauli, c: Pauli| self.string_expectation(&[(i, a), (j, b), (k, c)]);
        use Pauli::{X, Y, Z};
        let three = ThreePoint {
            zzz: e(Z, Z, Z),
            xxz: e(X, X, Z),
            yyz: e(Y, Y, Z),
            xzx: e(X, Z, X),
            yzy: e(Y, Z, Y),
            zxx: e(Z, X, X),
            zyy: e(Z, Y, Y),
        };
        TripleCorrelatorInput::new(
            self.mz(),
            self.correlators(m_ij)?,
            self.correlators(m_jk)?,
            self.correlators(k)?,
            three,
        )
    }
}

impl WickContractions for XyFreeFermion {
    fn g(&self, r: i64) -> f64 {
        self.g_at(r)
    }
}

/// Thermodynamic-limit correlators of the XY chain at distance `m`.
pub fn xy_thermo_correlators(lambda: f64, gamma: f64, m: usize) -> Result<CorrelatorSet> {
    XyFreeFermion::new(lambda, gamma, m.max(1))?.correlators(m)
}

/// Thermodynamic-limit three-site input for sites 0, m_ij, m_ij + m_jk.
pub fn xy_thermo_triple(
    lambda: f64,
    gamma: f64,
    m_ij: usize,
    m_jk: usize,
) -> Result<TripleCorrelatorInput> {
    XyFreeFermion::new(lambda, gamma, m_ij + m_jk)?.triple(m_ij, m_jk)
}
