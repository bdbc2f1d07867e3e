//! Reduced density matrices of one to three qubits.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::pauli::C64;

pub const TRACE_TOL: f64 = 1e-12;
pub const SYMMETRY_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

/// Real symmetric, unit-trace, positive semidefinite matrix on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    m: DMatrix<f64>,
}

impl DensityMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        Self::with_psd_tolerance(m, PSD_TOL)
    }

    /// As [`DensityMatrix::new`] but accepting eigenvalues down to `-psd_tol`.
    pub fn with_psd_tolerance(m: DMatrix<f64>, psd_tol: f64) -> Result<Self> {
        let dim = m.nrows();
        let n_qubits = match dim {
            2 => 1,
            4 => 2,
            8 => 3,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "density matrix must be 2x2, 4x4 or 8x8, got {}x{}",
                    m.nrows(),
                    m.ncols()
                )))
            }
        };
        if m.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: m.ncols(),
            });
        }
        let trace = m.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::Unphysical(format!("trace {trace} differs from 1")));
        }
        let asym = (&m - m.transpose()).amax();
        if asym > SYMMETRY_TOL {
            return Err(Error::Unphysical(format!("asymmetry {asym:.3e}")));
        }
        let rho = Self { n_qubits, m };
        let lowest = rho.min_eigenvalue();
        if lowest < -psd_tol {
            return Err(Error::Unphysical(format!(
                "negative eigenvalue {lowest:.3e}"
            )));
        }
        Ok(rho)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn to_complex(&self) -> DMatrix<C64> {
        self.m.map(|x| C64::new(x, 0.0))
    }
}
