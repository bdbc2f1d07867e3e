//! Finite periodic XY and XXZ chains: Hamiltonians, ground states and
//! reduced density matrices by exact diagonalization.

mod basis;
mod ground;
mod hamiltonian;
mod model;
mod reduce;

pub use basis::{Basis, Parity, Sector};
pub use ground::{ground_states, lowest_states, GroundStateBundle};
pub use hamiltonian::{build_hamiltonian, SparseHamiltonian};
pub use model::{FiniteChain, ModelKind, ModelSpec, MAX_DENSE_SITES, MAX_SITES};
pub use reduce::{pauli_expectation, reduce_density};
