//! Magnetization and spin-spin correlators, in the thermodynamic limit (XY,
//! free fermions) and at finite size (exact diagonalization), plus assembly of
//! reduced density matrices from them.

mod assemble;
mod ed;
mod set;
mod thermo;
mod wick;

pub use assemble::{build_rho_pair, build_rho_single, build_rho_triple};
pub use ed::{
    bundle_correlators, bundle_triple, ed_correlators, ed_triple, ferro_correlators, ferro_triple,
};
pub use set::{CorrelatorSet, Source, ThreePoint, TripleCorrelatorInput};
pub use thermo::{xy_thermo_correlators, xy_thermo_triple, XyFreeFermion};
pub use wick::{MajoranaWord, WickContractions};
