//! Reduced density matrices assembled from correlators.

use nalgebra::DMatrix;

use crate::correlators::set::{CorrelatorSet, TripleCorrelatorInput, PHYSICAL_TOL};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::pauli::{pauli_string, Pauli, C64};

fn real_part(m: &DMatrix<C64>) -> Result<DMatrix<f64>> {
    let imag = m.map(|z| z.im.abs()).max();
    if imag > 1e-12 {
        return Err(Error::Unphysical(format!(
            "imaginary entries up to {imag:.3e}"
        )));
    }
    Ok(m.map(|z| z.re))
}

fn assemble(terms: &[(f64, Vec<Pauli>)], n: usize) -> Result<DensityMatrix> {
    let dim = 1 << n;
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for (coef, ops) in terms {
        if *coef != 0.0 {
            m += pauli_string(ops) * C64::new(*coef / dim as f64, 0.0);
        }
    }
    DensityMatrix::with_psd_tolerance(real_part(&m)?, PHYSICAL_TOL)
}

/// ρ = (1 + ⟨σ^z⟩ σ^z)/2.
pub fn build_rho_single(mz: f64) -> Result<DensityMatrix> {
    if !mz.is_finite() || mz.abs() > 1.0 + 1e-12 {
        return Err(Error::Unphysical(format!("|mz| = {} exceeds 1", mz.abs())));
    }
    let m = DMatrix::from_row_slice(2, 2, &[0.5 * (1.0 + mz), 0.0, 0.0, 0.5 * (1.0 - mz)]);
    DensityMatrix::with_psd_tolerance(m, PHYSICAL_TOL)
}

/// ρ = ¼[1 + mz(σ^z⊗1 + 1⊗σ^z) + xx σ^xσ^x + yy σ^yσ^y + zz σ^zσ^z].
pub fn build_rho_pair(c: &CorrelatorSet) -> Result<DensityMatrix> {
    c.validate()?;
    use Pauli::{I, X, Y, Z};
    assemble(
        &[
            (1.0, vec![I, I]),
            (c.mz, vec![Z, I]),
            (c.mz, vec![I, Z]),
            (c.xx, vec![X, X]),
            (c.yy, vec![Y, Y]),
            (c.zz, vec![Z, Z]),
        ],
        2,
    )
}

/// Three-site state ⅛ Σ ⟨P_i Q_j R_k⟩ P⊗Q⊗R over the twenty strings that
/// survive Z₂ symmetry and reality.
pub fn build_rho_triple(t: &TripleCorrelatorInput) -> Result<DensityMatrix> {
    t.validate()?;
    use Pauli::{I, X, Y, Z};
    let th = &t.three;
    assemble(
        &[
            (1.0, vec![I, I, I]),
            (t.mz, vec![Z, I, I]),
            (t.mz, vec![I, Z, I]),
            (t.mz, vec![I, I, Z]),
            (t.ij.xx, vec![X, X, I]),
            (t.ij.yy, vec![Y, Y, I]),
            (t.ij.zz, vec![Z, Z, I]),
            (t.jk.xx, vec![I, X, X]),
            (t.jk.yy, vec![I, Y, Y]),
            (t.jk.zz, vec![I, Z, Z]),
            (t.ik.xx, vec![X, I, X]),
            (t.ik.yy, vec![Y, I, Y]),
            (t.ik.zz, vec![Z, I, Z]),
            (th.zzz, vec![Z, Z, Z]),
            (th.xxz, vec![X, X, Z]),
            (th.yyz, vec![Y, Y, Z]),
            (th.xzx, vec![X, Z, X]),
            (th.yzy, vec![Y, Z, Y]),
            (th.zxx, vec![Z, X, X]),
            (th.zyy, vec![Z, Y, Y]),
        ],
        3,
    )
}
