//! Product quadrature on the GWF angle domain and state reconstruction.
//!
//! Per site the measure is dΩ = (1/π) sin2θ dθ dφ = (1/2π) du dφ with
//! u = cos2θ ∈ [−1, 1]; Gauss–Legendre in u and the trapezoid rule in φ are
//! exact for the polynomial-in-n̂ integrands that occur for one and two qubits.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::pauli::C64;
use crate::phase_space::gwf::{gwf_kernel, AngleConfig};
use crate::phase_space::operator::{qubits_of, trace_product, AsOperator};

pub const SPHERE_NODES_PER_AXIS: usize = 16;

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Single-site angle nodes (θ, φ) with weights summing to the total measure 2.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    nodes: Vec<(f64, f64, f64)>,
}

impl Default for SphereGrid {
    fn default() -> Self {
        Self::new(SPHERE_NODES_PER_AXIS)
    }
}

impl SphereGrid {
    pub fn new(per_axis: usize) -> Self {
        let mut nodes = Vec::with_capacity(per_axis * per_axis);
        for (u, wu) in gauss_legendre(per_axis) {
            let theta = 0.5 * u.clamp(-1.0, 1.0).acos();
            for j in 0..per_axis {
                let phi = 2.0 * PI * j as f64 / per_axis as f64;
                nodes.push((theta, phi, wu / per_axis as f64));
            }
        }
        Self { nodes }
    }

    pub fn nodes(&self) -> &[(f64, f64, f64)] {
        &self.nodes
    }

    /// All product configurations for `n` sites with their weights, in
    /// lexicographic order (site 0 slowest).
    pub fn product(&self, n: usize) -> Vec<(AngleConfig, f64)> {
        let m = self.nodes.len();
        (0..m.pow(n as u32))
            .map(|mut idx| {
                let mut angles = vec![(0.0, 0.0); n];
                let mut w = 1.0;
                for s in (0..n).rev() {
                    let (t, p, ws) = self.nodes[idx % m];
                    angles[s] = (t, p);
                    w *= ws;
                    idx /= m;
                }
                (AngleConfig::new(angles).expect("grid angles in range"), w)
            })
            .collect()
    }
}

/// W(Ω) of `op` on every product node of `grid` (order of [`SphereGrid::product`]).
pub fn sample_gwf(op: &impl AsOperator, grid: &SphereGrid) -> Result<Vec<f64>> {
    let m = op.as_complex();
    let n = qubits_of(&m)?;
    Ok(grid
        .product(n)
        .iter()
        .map(|(cfg, _)| trace_product(&m, &gwf_kernel(cfg).matrix).re)
        .collect())
}

/// ∫ W(Ω) Δ(Ω) dΩ from samples on the product grid.
pub fn reconstruct_operator(samples: &[f64], n: usize, grid: &SphereGrid) -> Result<DMatrix<C64>> {
    let configs = grid.product(n);
    if samples.len() != configs.len() {
        return Err(Error::DimensionMismatch {
            expected: configs.len(),
            actual: samples.len(),
        });
    }
    let dim = 1 << n;
    let mut out = DMatrix::<C64>::zeros(dim, dim);
    for ((cfg, w), &s) in configs.iter().zip(samples) {
        out += gwf_kernel(cfg).matrix * C64::new(w * s, 0.0);
    }
    Ok(out)
}

/// Reconstructs a real density matrix; fails if the quadrature result is not
/// a unit-trace real symmetric matrix to 1e-10.
pub fn reconstruct_from_gwf(samples: &[f64], n: usize, grid: &SphereGrid) -> Result<DensityMatrix> {
    let m = reconstruct_operator(samples, n, grid)?;
    let imag = m.map(|z| z.im.abs()).max();
    let trace = m.trace().re;
    if imag > 1e-10 || (trace - 1.0).abs() > 1e-10 {
        return Err(Error::Quadrature {
            tolerance: 1e-10,
            achieved: imag.max((trace - 1.0).abs()),
        });
    }
    let re = m.map(|z| z.re);
    let re = (&re + re.transpose()) * (0.5 / trace);
    DensityMatrix::new(re)
}
