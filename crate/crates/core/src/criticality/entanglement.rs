use nalgebra::{DMatrix, SymmetricEigen};

use crate::correlators::{build_rho_pair, CorrelatorSet};
use crate::error::Result;
use crate::pauli::{pauli_string, Pauli};
use crate::phase_space::{matrix_sqrt, DwfGrid};

/// Sum of the magnitudes of the negative DWF values.
pub fn dwf_negativity(grid: &DwfGrid) -> f64 {
    grid.values().iter().filter(|v| **v < 0.0).map(|v| -v).sum()
}

/// Wootters concurrence of the two-site state built from `c`.
pub fn concurrence_pair(c: &CorrelatorSet) -> Result<f64> {
    let rho = build_rho_pair(c)?;
    let root = matrix_sqrt(&rho)?;
    let yy: DMatrix<f64> = pauli_string(&[Pauli::Y, Pauli::Y]).map(|z| z.re);
    let flipped = &yy * rho.matrix() * &yy;
    let m = &root * flipped * &root;
    let m = (&m + m.transpose()) * 0.5;
    let mut l: Vec<f64> = SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .map(|e| e.max(0.0).sqrt())
        .collect();
    l.sort_by(|a, b| b.total_cmp(a));
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// The short form 2|⟨σ^xσ^x⟩|.
pub fn concurrence_simplified(c: &CorrelatorSet) -> f64 {
    2.0 * c.xx.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlators::Source;
    use crate::phase_space::dwf;
    use proptest::prelude::*;

    fn set(mz: f64, xx: f64, yy: f64, zz: f64) -> CorrelatorSet {
        CorrelatorSet::new(mz, xx, yy, zz, 1, Source::Synthetic).unwrap()
    }

    #[test]
    fn bell_and_product_states() {
        // Singlet: xx = yy = zz = −1.
        assert!((concurrence_pair(&set(0.0, -1.0, -1.0, -1.0)).unwrap() - 1.0).abs() < 1e-7);
        assert!(concurrence_pair(&set(1.0, 0.0, 0.0, 1.0)).unwrap() < 1e-7);
        assert!(concurrence_pair(&set(0.0, 0.0, 0.0, 0.0)).unwrap() < 1e-12);
        let g = dwf(&build_rho_pair(&set(0.0, -1.0, -1.0, -1.0)).unwrap()).unwrap();
        assert!((dwf_negativity(&g) - 0.5).abs() < 1e-12);
    }

    proptest! {
        // X-state closed form 2 max(0, |ρ14| ... ) for ρ with mz, xx, yy, zz.
        #[test]
        fn matches_x_state_formula(mz in -0.5f64..0.5, xx in -0.5f64..0.5, yy in -0.5f64..0.5, zz in -0.5f64..0.5) {
            let c = CorrelatorSet { mz, xx, yy, zz, distance: 1, source: Source::Synthetic };
            prop_assume!(c.validate().is_ok() && c.min_pair_eigenvalue() > 1e-6);
            let r11 = (1.0 + 2.0 * mz + zz) / 4.0;
            let r44 = (1.0 - 2.0 * mz + zz) / 4.0;
            let r22 = (1.0 - zz) / 4.0;
            let r14 = (xx - yy) / 4.0;
            let r23 = (xx + yy) / 4.0;
            let want = 2.0 * (r23.abs() - (r11 * r44).sqrt()).max(r14.abs() - r22).max(0.0);
            let got = concurrence_pair(&c).unwrap();
            prop_assert!((got - want).abs() < 1e-6, "got {got}, want {want}");
        }
    }
}
