use crate::chain::basis::{Basis, Sector};
use crate::chain::model::{FiniteChain, ModelSpec};
use crate::error::{Error, Result};
use crate::numerics::lanczos::LinearOperator;

/// Real symmetric Hamiltonian restricted to one sector, stored row-compressed.
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    basis: Basis,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SparseHamiltonian {
    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Entries of row `r` as `(column, value)`.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()]
            .iter()
            .zip(&self.vals[span])
            .map(|(&c, &v)| (c as usize, v))
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let n = self.dim();
        let mut m = nalgebra::DMatrix::zeros(n, n);
        for r in 0..n {
            for (c, v) in self.row(r) {
                m[(r, c)] += v;
            }
        }
        m
    }

    /// Largest absolute row sum, an upper bound on the spectral radius.
    pub fn norm_bound(&self) -> f64 {
        (0..self.dim())
            .map(|r| self.row(r).map(|(_, v)| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl LinearOperator for SparseHamiltonian {
    fn dim(&self) -> usize {
        self.basis.dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            let span = self.row_ptr[r]..self.row_ptr[r + 1];
            *yr = self.cols[span.clone()]
                .iter()
                .zip(&self.vals[span])
                .map(|(&c, &v)| v * x[c as usize])
                .sum();
        }
    }
}

/// Builds H for `model` on the periodic `chain`, restricted to `sector`.
///
/// The XY chain conserves only spin-flip parity, so `Sector::Weight` is
/// rejected for it. A two-site ring counts its bond twice.
pub fn build_hamiltonian(
    model: &ModelSpec,
    chain: &FiniteChain,
    sector: Sector,
) -> Result<SparseHamiltonian> {
    model.validate()?;
    let n = chain.n_sites();
    if matches!(model, ModelSpec::Xy { .. }) && matches!(sector, Sector::Weight(_)) {
        return Err(Error::InvalidArgument(
            "the XY chain does not conserve the number of down spins".into(),
        ));
    }
    let basis = Basis::new(n, sector)?;
    let bit = |s: u32, site: usize| (s >> (n - 1 - site)) & 1;
    let mask = |site: usize| 1u32 << (n - 1 - site);

    let mut row_ptr = Vec::with_capacity(basis.dim() + 1);
    let mut cols = Vec::new();
    let mut vals = Vec::new();
    let mut entries: Vec<(u32, f64)> = Vec::with_capacity(n + 1);
    row_ptr.push(0);

    for &s in basis.states() {
        entries.clear();
        let mut diag = 0.0;
        for i in 0..n {
            let j = (i + 1) % n;
            let (bi, bj) = (bit(s, i), bit(s, j));
            let flipped = s ^ mask(i) ^ mask(j);
            match *model {
                ModelSpec::Xy { lambda, gamma } => {
                    // (λ/2)[(1+γ)xx + (1−γ)yy] flips both spins with weight
                    // λγ when they are parallel and λ when antiparallel.
                    let amp = if bi == bj { -lambda * gamma } else { -lambda };
                    if amp != 0.0 {
                        let c = basis.index(flipped).expect("parity preserved");
                        entries.push((c as u32, amp));
                    }
                    diag -= if bit(s, i) == 0 { 1.0 } else { -1.0 };
                }
                ModelSpec::Xxz { delta } => {
                    if bi != bj {
                        let c = basis.index(flipped).expect("weight preserved");
                        entries.push((c as u32, 0.5));
                    }
                    diag += 0.25 * delta * if bi == bj { 1.0 } else { -1.0 };
                }
            }
        }
        let r = basis.index(s).expect("state from basis") as u32;
        entries.push((r, diag));
        entries.sort_by_key(|e| e.0);
        let mut k = 0;
        while k < entries.len() {
            let (c, mut v) = entries[k];
            k += 1;
            while k < entries.len() && entries[k].0 == c {
                v += entries[k].1;
                k += 1;
            }
            if v != 0.0 {
                cols.push(c);
                vals.push(v);
            }
        }
        row_ptr.push(cols.len());
    }

    Ok(SparseHamiltonian {
        basis,
        row_ptr,
        cols,
        vals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::basis::Parity;

    fn chain(n: usize) -> FiniteChain {
        FiniteChain::new(n).unwrap()
    }

    #[test]
    fn dense_matrices_are_symmetric() {
        for model in [
            ModelSpec::xy(0.7, 0.3).unwrap(),
            ModelSpec::xxz(-0.4).unwrap(),
        ] {
            let h = build_hamiltonian(&model, &chain(6), Sector::Full)
                .unwrap()
                .to_dense();
            assert!((&h - h.transpose()).amax() <= 1e-12);
        }
    }

    #[test]
    fn field_only_xy_is_diagonal() {
        let h = build_hamiltonian(&ModelSpec::xy(0.0, 0.5).unwrap(), &chain(2), Sector::Full)
            .unwrap()
            .to_dense();
        let expected = nalgebra::DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            -2.0, 0.0, 0.0, 2.0,
        ]));
        assert_eq!(h, expected);
    }

    #[test]
    fn xxz_conserves_magnetization() {
        let h = build_hamiltonian(&ModelSpec::xxz(0.6).unwrap(), &chain(6), Sector::Full).unwrap();
        for r in 0..h.dim() {
            for (c, _) in h.row(r) {
                assert_eq!((r as u32).count_ones(), (c as u32).count_ones());
            }
        }
    }

    #[test]
    fn weight_sector_rejected_for_xy() {
        let err = build_hamiltonian(
            &ModelSpec::xy(1.0, 0.5).unwrap(),
            &chain(4),
            Sector::Weight(2),
        );
        assert!(err.is_err());
    }

    #[test]
    fn parity_blocks_reassemble_full_spectrum() {
        let model = ModelSpec::xy(0.9, 0.4).unwrap();
        let full = build_hamiltonian(&model, &chain(5), Sector::Full)
            .unwrap()
            .to_dense();
        let mut all: Vec<f64> = full.symmetric_eigenvalues().iter().copied().collect();
        let mut blocks = Vec::new();
        for p in [Parity::Even, Parity::Odd] {
            let h = build_hamiltonian(&model, &chain(5), Sector::Parity(p))
                .unwrap()
                .to_dense();
            blocks.extend(h.symmetric_eigenvalues().iter().copied());
        }
        all.sort_by(f64::total_cmp);
        blocks.sort_by(f64::total_cmp);
        for (a, b) in all.iter().zip(&blocks) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
