//! Discrete and generalized Wigner functions of reduced states of the XY and
//! XXZ spin-½ chains, and detection of quantum phase transitions from
//! parameter sweeps of those phase-space distributions.

pub mod chain;
pub mod correlators;
pub mod criticality;
pub mod density;
pub mod error;
pub mod numerics;
pub mod parse;
pub mod pauli;
pub mod phase_space;
pub mod validation;

pub use error::{Error, Result};
