use nalgebra::SymmetricEigen;

use crate::chain::basis::{Parity, Sector};
use crate::chain::hamiltonian::{build_hamiltonian, SparseHamiltonian};
use crate::chain::model::{FiniteChain, ModelSpec};
use crate::error::{Error, Result};
use crate::numerics::lanczos::{lowest_eigenpair, LanczosOptions, LinearOperator};

/// Sectors up to this size are diagonalized densely.
const DENSE_SECTOR_DIM: usize = 512;
/// Relative gap below which two levels count as degenerate.
const DEGENERACY_TOL: f64 = 1e-10;

/// Ground energy and the (possibly degenerate) ground states in the full
/// `2^N` basis.
#[derive(Debug, Clone)]
pub struct GroundStateBundle {
    pub energy: f64,
    pub states: Vec<Vec<f64>>,
    pub degeneracy: usize,
    /// Distance to the nearest competing level, when one was computed.
    pub gap: Option<f64>,
    pub n_sites: usize,
}

struct Deflated<'a> {
    h: &'a SparseHamiltonian,
    found: &'a [Vec<f64>],
    shift: f64,
}

impl LinearOperator for Deflated<'_> {
    fn dim(&self) -> usize {
        self.h.dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.h.apply(x, y);
        for v in self.found {
            let c: f64 = v.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() * self.shift;
            y.iter_mut().zip(v).for_each(|(yi, vi)| *yi += c * vi);
        }
    }
}

/// The `k` lowest eigenpairs of `h` in its own sector basis, ascending.
pub fn lowest_states(h: &SparseHamiltonian, k: usize) -> Result<Vec<(f64, Vec<f64>)>> {
    let k = k.min(h.dim());
    if h.dim() <= DENSE_SECTOR_DIM {
        let eig = SymmetricEigen::new(h.to_dense());
        let mut order: Vec<usize> = (0..h.dim()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        return Ok(order
            .into_iter()
            .take(k)
            .map(|i| {
                let mut v: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
                fix_sign(&mut v);
                (eig.eigenvalues[i], v)
            })
            .collect());
    }
    let shift = 2.0 * h.norm_bound() + 1.0;
    let mut found: Vec<Vec<f64>> = Vec::new();
    let mut out = Vec::new();
    for _ in 0..k {
        let op = Deflated {
            h,
            found: &found,
            shift,
        };
        let pair = lowest_eigenpair(&op, LanczosOptions::default())?;
        let mut v = pair.vector;
        fix_sign(&mut v);
        out.push((pair.value, v.clone()));
        found.push(v);
    }
    Ok(out)
}

// Eigenvectors are defined up to sign; pin it so results are reproducible.
fn fix_sign(v: &mut [f64]) {
    let pivot = v
        .iter()
        .copied()
        .max_by(|a, b| a.abs().total_cmp(&b.abs()))
        .unwrap_or(0.0);
    if pivot < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn is_degenerate(e0: f64, e1: f64) -> bool {
    (e1 - e0).abs() < DEGENERACY_TOL * e0.abs().max(1.0)
}

/// Ground state(s) of `model` on `chain`.
///
/// XY: the lowest level of each parity sector is found; if the two are
/// degenerate both are kept. XXZ with Δ ≤ −1: the two fully polarized
/// states. XXZ with Δ > −1: the lowest state with zero total S^z (even N only).
pub fn ground_states(model: &ModelSpec, chain: &FiniteChain) -> Result<GroundStateBundle> {
    model.validate()?;
    let n = chain.n_sites();
    match *model {
        ModelSpec::Xy { .. } => {
            let mut levels = Vec::with_capacity(2);
            for p in [Parity::Even, Parity::Odd] {
                let h = build_hamiltonian(model, chain, Sector::Parity(p))?;
                let (e, v) = lowest_states(&h, 1)?.remove(0);
                levels.push((e, h.basis().embed(&v)));
            }
            levels.sort_by(|a, b| a.0.total_cmp(&b.0));
            let gap = levels[1].0 - levels[0].0;
            let energy = levels[0].0;
            let states: Vec<Vec<f64>> = if is_degenerate(levels[0].0, levels[1].0) {
                levels.into_iter().map(|l| l.1).collect()
            } else {
                vec![levels.swap_remove(0).1]
            };
            Ok(GroundStateBundle {
                energy,
                degeneracy: states.len(),
                states,
                gap: Some(gap),
                n_sites: n,
            })
        }
        ModelSpec::Xxz { delta } if delta <= -1.0 => {
            let dim = chain.hilbert_dim();
            let mut up = vec![0.0; dim];
            let mut down = vec![0.0; dim];
            up[0] = 1.0;
            down[dim - 1] = 1.0;
            Ok(GroundStateBundle {
                energy: 0.25 * delta * n as f64,
                states: vec![up, down],
                degeneracy: 2,
                gap: None,
                n_sites: n,
            })
        }
        ModelSpec::Xxz { .. } => {
            if n % 2 == 1 {
                return Err(Error::UnsupportedChain(format!(
                    "XXZ ground states need an even number of sites, got {n}"
                )));
            }
            let h = build_hamiltonian(model, chain, Sector::Weight(n / 2))?;
            let (energy, v) = lowest_states(&h, 1)?.remove(0);
            Ok(GroundStateBundle {
                energy,
                states: vec![h.basis().embed(&v)],
                degeneracy: 1,
                gap: None,
                n_sites: n,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FiniteChain {
        FiniteChain::new(n).unwrap()
    }

    #[test]
    fn field_only_ground_state_is_all_up() {
        let b = ground_states(&ModelSpec::xy(0.0, 0.5).unwrap(), &chain(6)).unwrap();
        assert_eq!(b.degeneracy, 1);
        assert!((b.energy + 6.0).abs() < 1e-12);
        assert!((b.states[0][0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_site_xxz_free_point() {
        let b = ground_states(&ModelSpec::xxz(0.0).unwrap(), &chain(2)).unwrap();
        assert!((b.energy + 1.0).abs() < 1e-12);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = &b.states[0];
        assert!((v[1].abs() - s).abs() < 1e-12 && (v[2].abs() - s).abs() < 1e-12);
        assert!((v[1] + v[2]).abs() < 1e-12, "antisymmetric combination");
    }

    #[test]
    fn lanczos_path_matches_dense_path() {
        let model = ModelSpec::xy(0.8, 0.6).unwrap();
        let c = chain(11);
        let h = build_hamiltonian(&model, &c, Sector::Parity(Parity::Even)).unwrap();
        assert!(h.dim() > DENSE_SECTOR_DIM);
        let lanczos = lowest_states(&h, 2).unwrap();
        let dense = h.to_dense().symmetric_eigenvalues();
        let mut ev: Vec<f64> = dense.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        assert!((lanczos[0].0 - ev[0]).abs() < 1e-9);
        assert!((lanczos[1].0 - ev[1]).abs() < 1e-9);
    }

    #[test]
    fn odd_xxz_rejected() {
        assert!(ground_states(&ModelSpec::xxz(0.5).unwrap(), &chain(5)).is_err());
    }
}
