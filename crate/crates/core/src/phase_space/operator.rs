use nalgebra::DMatrix;

use crate::density::DensityMatrix;
use crate::pauli::C64;

/// Anything that can be fed to the Wigner maps as a square complex matrix.
pub trait AsOperator {
    fn as_complex(&self) -> DMatrix<C64>;
}

impl AsOperator for DMatrix<C64> {
    fn as_complex(&self) -> DMatrix<C64> {
        self.clone()
    }
}

impl AsOperator for DMatrix<f64> {
    fn as_complex(&self) -> DMatrix<C64> {
        self.map(|x| C64::new(x, 0.0))
    }
}

impl AsOperator for DensityMatrix {
    fn as_complex(&self) -> DMatrix<C64> {
        self.to_complex()
    }
}

/// Number of qubits for a `2^n`-dimensional square operator, n ∈ {1, 2, 3}.
pub(crate) fn qubits_of(m: &DMatrix<C64>) -> crate::error::Result<usize> {
    use crate::error::Error;
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            actual: m.ncols(),
        });
    }
    match m.nrows() {
        2 => Ok(1),
        4 => Ok(2),
        8 => Ok(3),
        d => Err(Error::InvalidArgument(format!(
            "operator dimension {d} is not 2, 4 or 8"
        ))),
    }
}

/// Tr(a b) without forming the product.
pub(crate) fn trace_product(a: &DMatrix<C64>, b: &DMatrix<C64>) -> C64 {
    let n = a.nrows();
    let mut t = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            t += a[(i, k)] * b[(k, i)];
        }
    }
    t
}
