//! Spin strings as products of Majorana operators, evaluated in a
//! quasi-free state by Pfaffians of the two-point contraction matrix.
//!
//! Jordan–Wigner convention: with A_l = c†_l + c_l and B_l = c†_l − c_l,
//! σ^z_l = A_l B_l, σ^x_l = (∏_{m<l} A_m B_m) A_l and
//! σ^y_l = i (∏_{m<l} A_m B_m) B_l.

use nalgebra::DMatrix;

use crate::numerics::pfaffian::pfaffian;
use crate::pauli::{Pauli, C64};

/// One-body function of a translation-invariant quasi-free state:
/// ⟨B_x A_y⟩ = G(y − x), ⟨A_x B_y⟩ = −G(x − y), ⟨A_x A_y⟩ = −⟨B_x B_y⟩ = δ_xy.
pub trait WickContractions {
    fn g(&self, r: i64) -> f64;
}

impl<F: Fn(i64) -> f64> WickContractions for F {
    fn g(&self, r: i64) -> f64 {
        self(r)
    }
}

/// `coeff · γ_1 γ_2 …` with Majorana labels `2·site` (A) and `2·site + 1` (B).
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaWord {
    coeff: C64,
    ops: Vec<usize>,
}

impl MajoranaWord {
    pub fn identity() -> Self {
        Self {
            coeff: C64::new(1.0, 0.0),
            ops: Vec::new(),
        }
    }

    pub fn pauli(site: usize, p: Pauli) -> Self {
        let string = || (0..site).flat_map(|m| [2 * m, 2 * m + 1]);
        let (coeff, ops): (C64, Vec<usize>) = match p {
            Pauli::I => (C64::new(1.0, 0.0), Vec::new()),
            Pauli::Z => (C64::new(1.0, 0.0), vec![2 * site, 2 * site + 1]),
            Pauli::X => (C64::new(1.0, 0.0), string().chain([2 * site]).collect()),
            Pauli::Y => (C64::new(0.0, 1.0), string().chain([2 * site + 1]).collect()),
        };
        let mut w = Self { coeff, ops };
        w.normalize();
        w
    }

    /// Product of Pauli operators on the listed sites.
    pub fn pauli_string(ops: &[(usize, Pauli)]) -> Self {
        ops.iter()
            .fold(Self::identity(), |acc, &(s, p)| acc.mul(&Self::pauli(s, p)))
    }

    pub fn coeff(&self) -> C64 {
        self.coeff
    }

    pub fn ops(&self) -> &[usize] {
        &self.ops
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut w = Self {
            coeff: self.coeff * other.coeff,
            ops: self.ops.iter().chain(&other.ops).copied().collect(),
        };
        w.normalize();
        w
    }

    // Sort into ascending order (distinct Majoranas anticommute) and cancel
    // squares: A² = 1, B² = −1.
    fn normalize(&mut self) {
        let mut sign = 1.0;
        for i in 1..self.ops.len() {
            let mut k = i;
            while k > 0 && self.ops[k - 1] > self.ops[k] {
                self.ops.swap(k - 1, k);
                sign = -sign;
                k -= 1;
            }
        }
        let mut out: Vec<usize> = Vec::with_capacity(self.ops.len());
        for &op in &self.ops {
            if out.last() == Some(&op) {
                out.pop();
                if op % 2 == 1 {
                    sign = -sign;
                }
            } else {
                out.push(op);
            }
        }
        self.ops = out;
        self.coeff *= sign;
    }

    /// Expectation value in the quasi-free state described by `g`.
    pub fn expectation(&self, g: &impl WickContractions) -> C64 {
        let n = self.ops.len();
        if n % 2 == 1 {
            return C64::new(0.0, 0.0);
        }
        let mut m = DMatrix::zeros(n, n);
        for a in 0..n {
            for b in (a + 1)..n {
                let (x, y) = (self.ops[a], self.ops[b]);
                let (sx, sy) = ((x / 2) as i64, (y / 2) as i64);
                let v = match (x % 2, y % 2) {
                    (1, 0) => g.g(sy - sx),
                    (0, 1) => -g.g(sx - sy),
                    // Distinct A–A or B–B pairs do not contract.
                    _ => 0.0,
                };
                m[(a, b)] = v;
                m[(b, a)] = -v;
            }
        }
        self.coeff * pfaffian(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli_string;

    fn word_matrix(w: &MajoranaWord, n_sites: usize) -> DMatrix<C64> {
        // Explicit Jordan–Wigner matrices: A_l = Z..Z X_l, B_l = −i Z..Z Y_l
        // (so that A_l B_l = Z_l).
        let dim = 1 << n_sites;
        let mut out = DMatrix::<C64>::identity(dim, dim) * w.coeff();
        for &op in w.ops() {
            let site = op / 2;
            let mut ops = vec![Pauli::I; n_sites];
            ops[..site].fill(Pauli::Z);
            ops[site] = if op % 2 == 0 { Pauli::X } else { Pauli::Y };
            let mut m = pauli_string(&ops);
            if op % 2 == 1 {
                m *= C64::new(0.0, -1.0);
            }
            out *= m;
        }
        out
    }

    #[test]
    fn majorana_words_reproduce_pauli_matrices() {
        let n = 3;
        for site in 0..n {
            for p in Pauli::ALL {
                let w = MajoranaWord::pauli(site, p);
                let mut ops = vec![Pauli::I; n];
                ops[site] = p;
                let diff = (word_matrix(&w, n) - pauli_string(&ops))
                    .map(|z| z.norm())
                    .max();
                assert!(diff < 1e-14, "site {site} {p:?}");
            }
        }
    }

    #[test]
    fn pair_strings_reduce_to_short_words() {
        let w = MajoranaWord::pauli_string(&[(0, Pauli::X), (1, Pauli::X)]);
        assert_eq!(w.ops(), &[1, 2]);
        assert_eq!(w.coeff(), C64::new(1.0, 0.0));
        let w = MajoranaWord::pauli_string(&[(2, Pauli::Z), (2, Pauli::Z)]);
        assert!(w.ops().is_empty());
        assert_eq!(w.coeff(), C64::new(1.0, 0.0));
    }

    #[test]
    fn product_state_expectations() {
        // All spins up: G(r) = −δ_{r0}.
        let g = |r: i64| if r == 0 { -1.0 } else { 0.0 };
        let z = MajoranaWord::pauli(1, Pauli::Z).expectation(&g);
        assert!((z.re - 1.0).abs() < 1e-15);
        let zz = MajoranaWord::pauli_string(&[(0, Pauli::Z), (2, Pauli::Z)]).expectation(&g);
        assert!((zz.re - 1.0).abs() < 1e-15);
        let xx = MajoranaWord::pauli_string(&[(0, Pauli::X), (1, Pauli::X)]).expectation(&g);
        assert!(xx.norm() < 1e-15);
    }
}
