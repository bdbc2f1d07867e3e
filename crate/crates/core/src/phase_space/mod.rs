//! Discrete (Wootters) and generalized (kernel) Wigner functions of one to
//! three qubits.

mod appendix;
mod dwf;
mod gwf;
mod operator;
mod point;
mod reconstruct;
mod sqrt;

pub use appendix::{appendix_comparison, gwf_triple_printed, TermComparison};
pub use dwf::{
    dwf, dwf_pair_closed, dwf_single_closed, extremize_dwf, pair_representatives, DwfGrid,
};
pub use gwf::{
    extremize_gwf, gwf, gwf_kernel, gwf_pair_closed, gwf_single_closed, gwf_triple_closed,
    gwf_xxz_closed, kernel_direction, AngleConfig, GwfExtremum, GwfKernel, ThetaBranch,
};
pub use operator::AsOperator;
pub use point::{phase_point_operator, PhasePoint, PhasePointOperator};
pub use reconstruct::{
    reconstruct_from_gwf, reconstruct_operator, sample_gwf, SphereGrid, SPHERE_NODES_PER_AXIS,
};
pub use sqrt::matrix_sqrt;
