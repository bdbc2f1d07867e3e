//! Single-qubit Pauli operators and their action on computational basis bits.
//!
//! Bit 0 is spin up (the +1 eigenstate of σ^z), bit 1 is spin down.

use nalgebra::{Complex, DMatrix};

pub type C64 = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> DMatrix<C64> {
        let o = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let entries = match self {
            Pauli::I => [one, o, o, one],
            Pauli::X => [o, one, one, o],
            Pauli::Y => [o, -i, i, o],
            Pauli::Z => [one, o, o, -one],
        };
        DMatrix::from_row_slice(2, 2, &entries)
    }

    /// `P|b⟩ = phase · |b'⟩`, returned as `(b', phase)`.
    pub fn act(self, bit: u32) -> (u32, C64) {
        let sign = if bit == 0 { 1.0 } else { -1.0 };
        match self {
            Pauli::I => (bit, C64::new(1.0, 0.0)),
            Pauli::X => (bit ^ 1, C64::new(1.0, 0.0)),
            Pauli::Y => (bit ^ 1, C64::new(0.0, sign)),
            Pauli::Z => (bit, C64::new(sign, 0.0)),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => '1',
            Pauli::X => 'x',
            Pauli::Y => 'y',
            Pauli::Z => 'z',
        }
    }
}

/// Kronecker product of a list of matrices, first factor most significant.
pub fn kron_all(factors: &[DMatrix<C64>]) -> DMatrix<C64> {
    let mut out = DMatrix::from_element(1, 1, C64::new(1.0, 0.0));
    for f in factors {
        out = out.kronecker(f);
    }
    out
}

/// Matrix of a Pauli string, first entry acting on the most significant qubit.
pub fn pauli_string(ops: &[Pauli]) -> DMatrix<C64> {
    kron_all(&ops.iter().map(|p| p.matrix()).collect::<Vec<_>>())
}
