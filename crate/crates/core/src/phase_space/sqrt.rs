use nalgebra::{DMatrix, SymmetricEigen};

use crate::density::{DensityMatrix, PSD_TOL};
use crate::error::{Error, Result};

/// Principal square root through the symmetric eigendecomposition.
///
/// Eigenvalues in [−1e-10, 0) are treated as zero; anything lower is rejected.
pub fn matrix_sqrt(rho: &DensityMatrix) -> Result<DMatrix<f64>> {
    let eig = SymmetricEigen::new(rho.matrix().clone());
    let mut roots = eig.eigenvalues.clone();
    for v in roots.iter_mut() {
        if *v < -PSD_TOL {
            return Err(Error::Unphysical(format!(
                "eigenvalue {v:.3e} has no real root"
            )));
        }
        *v = v.max(0.0).sqrt();
    }
    let q = &eig.eigenvectors;
    let s = q * DMatrix::from_diagonal(&roots) * q.transpose();
    Ok((&s + s.transpose()) * 0.5)
}
