//! The three-site GWF formula in its reference term-by-term form, for
//! comparison with the expansion used by [`gwf_triple_closed`].
//!
//! [`gwf_triple_closed`]: crate::phase_space::gwf_triple_closed

use crate::correlators::TripleCorrelatorInput;
use crate::error::{Error, Result};
use crate::phase_space::gwf::{kernel_direction, AngleConfig};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// One group of terms of the three-site expansion evaluated both ways.
#[derive(Debug, Clone, PartialEq)]
pub struct TermComparison {
    pub term: &'static str,
    pub printed: f64,
    pub rederived: f64,
    pub note: &'static str,
}

impl TermComparison {
    pub fn difference(&self) -> f64 {
        self.printed - self.rederived
    }
}

struct Factors {
    // Printed x factor cos2φ sin2θ, y factor sin2θ sin2φ, z factor cos2θ.
    px: [f64; 3],
    py: [f64; 3],
    c: [f64; 3],
    // Kernel direction components actually produced by U Π U†.
    nx: [f64; 3],
    ny: [f64; 3],
}

fn factors(config: &AngleConfig) -> Result<Factors> {
    if config.n_sites() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            actual: config.n_sites(),
        });
    }
    let mut f = Factors {
        px: [0.0; 3],
        py: [0.0; 3],
        c: [0.0; 3],
        nx: [0.0; 3],
        ny: [0.0; 3],
    };
    for s in 0..3 {
        let (t, p) = config.angles()[s];
        f.px[s] = (2.0 * p).cos() * (2.0 * t).sin();
        f.py[s] = (2.0 * t).sin() * (2.0 * p).sin();
        f.c[s] = (2.0 * t).cos();
        let n = kernel_direction(t, p);
        f.nx[s] = n[0];
        f.ny[s] = n[1];
    }
    Ok(f)
}

/// Per-group comparison of the printed three-site formula with the
/// rederived expansion. Both columns include the overall 1/8.
pub fn appendix_comparison(
    t: &TripleCorrelatorInput,
    config: &AngleConfig,
) -> Result<Vec<TermComparison>> {
    let f = factors(config)?;
    let (px, py, c, nx, ny) = (f.px, f.py, f.c, f.nx, f.ny);
    let (mz, th) = (t.mz, &t.three);
    let k = 3.0 * SQRT3;
    let rows = vec![
        TermComparison {
            term: "1",
            printed: 1.0,
            rederived: 1.0,
            note: "identical",
        },
        TermComparison {
            term: "z",
            printed: -SQRT3 * (c[0] + c[1] + c[2]) * mz,
            rederived: -SQRT3 * (c[0] + c[1] + c[2]) * mz,
            note: "identical",
        },
        TermComparison {
            term: "xx",
            printed: 3.0 * (px[0] * px[2] * t.ik.xx + (px[0] * px[1] + px[1] * px[2]) * t.ij.xx),
            rederived: 3.0
                * (nx[0] * nx[1] * t.ij.xx + nx[1] * nx[2] * t.jk.xx + nx[0] * nx[2] * t.ik.xx),
            note: "printed uses the (i,j) correlator for the (j,k) pair; equal only for equal spacings",
        },
        TermComparison {
            term: "yy",
            printed: 3.0
                * (py[0] * py[2] * t.ik.yy
                    + (py[0] * py[1] + (2.0 * config.theta(0)).sin()
                        * (2.0 * config.theta(2)).sin()
                        * (2.0 * config.phi(1)).sin()
                        * (2.0 * config.phi(2)).sin())
                        * t.ik.yy),
            rederived: 3.0
                * (ny[0] * ny[1] * t.ij.yy + ny[1] * ny[2] * t.jk.yy + ny[0] * ny[2] * t.ik.yy),
            note: "printed labels the (i,j) and (j,k) terms as (i,k) and pairs theta_i with phi_j",
        },
        TermComparison {
            term: "zz",
            printed: 3.0 * (c[0] * c[2] * t.ik.zz + (c[0] * c[1] + c[1] * c[2]) * t.ij.zz),
            rederived: 3.0 * (c[0] * c[1] * t.ij.zz + c[1] * c[2] * t.jk.zz + c[0] * c[2] * t.ik.zz),
            note: "printed uses the (i,j) correlator for the (j,k) pair; equal only for equal spacings",
        },
        TermComparison {
            term: "xxz",
            printed: -k * px[0] * px[1] * c[2] * t.ij.xx * mz,
            rederived: -k * nx[0] * nx[1] * c[2] * th.xxz,
            note: "printed factorizes <x_i x_j z_k> as <x_i x_j><z>",
        },
        TermComparison {
            term: "yyz",
            printed: -k * py[0] * py[1] * c[2] * t.ij.yy * mz,
            rederived: -k * ny[0] * ny[1] * c[2] * th.yyz,
            note: "printed factorizes <y_i y_j z_k> as <y_i y_j><z>",
        },
        TermComparison {
            term: "xzx",
            printed: k * px[0] * px[2] * c[1] * t.ik.xx * mz,
            rederived: -k * nx[0] * c[1] * nx[2] * th.xzx,
            note: "printed carries a plus sign and factorizes as <x_i x_k><z>",
        },
        TermComparison {
            term: "yzy",
            printed: k * py[0] * py[2] * c[1] * t.ik.yy * mz,
            rederived: -k * ny[0] * c[1] * ny[2] * th.yzy,
            note: "printed carries a plus sign and factorizes as <y_i y_k><z>",
        },
        TermComparison {
            term: "zxx",
            printed: 0.0,
            rederived: -k * c[0] * nx[1] * nx[2] * th.zxx,
            note: "absent from the printed formula",
        },
        TermComparison {
            term: "zyy",
            printed: 0.0,
            rederived: -k * c[0] * ny[1] * ny[2] * th.zyy,
            note: "absent from the printed formula",
        },
        TermComparison {
            term: "zzz",
            printed: -k * c[0] * c[1] * c[2] * (t.ij.zz - t.ik.zz) * mz,
            rederived: -k * c[0] * c[1] * c[2] * th.zzz,
            note: "printed (<z_i z_j> - <z_i z_k>)<z> is not the Wick value of <z_i z_j z_k>",
        },
    ];
    Ok(rows
        .into_iter()
        .map(|r| TermComparison {
            printed: r.printed / 8.0,
            rederived: r.rederived / 8.0,
            ..r
        })
        .collect())
}

/// The printed three-site formula, transcribed literally (missing operators
/// between lines read as '+').
pub fn gwf_triple_printed(t: &TripleCorrelatorInput, config: &AngleConfig) -> Result<f64> {
    Ok(appendix_comparison(t, config)?
        .iter()
        .map(|r| r.printed)
        .sum())
}
