//! Restarted Lanczos for the lowest eigenpair of a real symmetric operator.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A real symmetric linear map applied without storing a dense matrix.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;
    /// `y = A x`; `y` is overwritten.
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

#[derive(Debug, Clone, Copy)]
pub struct LanczosOptions {
    pub tol: f64,
    pub max_matvecs: usize,
    pub krylov_dim: usize,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_matvecs: 5000,
            krylov_dim: 60,
            seed: 0x5eed_1a2c,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub matvecs: usize,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn lowest_of_tridiagonal(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let k = alpha.len();
    let mut t = DMatrix::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (imin, &value) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty tridiagonal");
    (
        value,
        eig.eigenvectors.column(imin).iter().copied().collect(),
    )
}

/// Lowest eigenpair of `op` with full reorthogonalization and explicit restarts.
pub fn lowest_eigenpair(op: &dyn LinearOperator, opts: LanczosOptions) -> Result<Eigenpair> {
    let n = op.dim();
    if n == 0 {
        return Err(Error::InvalidArgument("empty operator".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    let s = norm(&start);
    start.iter_mut().for_each(|x| *x /= s);

    let kmax = opts.krylov_dim.min(n).max(1);
    let mut matvecs = 0usize;
    let mut w = vec![0.0; n];
    let mut last_residual;

    loop {
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha = Vec::with_capacity(kmax);
        let mut beta: Vec<f64> = Vec::with_capacity(kmax);
        let mut ritz = (0.0, vec![1.0]);

        for j in 0..kmax {
            op.apply(&basis[j], &mut w);
            matvecs += 1;
            let a = dot(&basis[j], &w);
            alpha.push(a);
            // Two passes of classical Gram-Schmidt against the whole basis.
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(v, &w);
                    w.iter_mut().zip(v).for_each(|(wi, vi)| *wi -= c * vi);
                }
            }
            let b = norm(&w);
            ritz = lowest_of_tridiagonal(&alpha, &beta);
            let estimate = b * ritz.1.last().copied().unwrap_or(0.0).abs();
            let exhausted = b <= 1e-14 * a.abs().max(1.0);
            if estimate <= 0.1 * opts.tol
                || exhausted
                || j + 1 == kmax
                || matvecs >= opts.max_matvecs
            {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }

        let mut x = vec![0.0; n];
        for (v, &c) in basis.iter().zip(&ritz.1) {
            x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += c * vi);
        }
        let s = norm(&x);
        x.iter_mut().for_each(|xi| *xi /= s);

        op.apply(&x, &mut w);
        matvecs += 1;
        let value = dot(&x, &w);
        let residual = w
            .iter()
            .zip(&x)
            .map(|(hx, xi)| (hx - value * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        last_residual = residual;
        if residual <= opts.tol {
            return Ok(Eigenpair {
                value,
                vector: x,
                residual,
                matvecs,
            });
        }
        if matvecs >= opts.max_matvecs {
            break;
        }
        start = x;
    }
    Err(Error::NoConvergence {
        what: "Lanczos",
        residual: last_residual,
    })
}
