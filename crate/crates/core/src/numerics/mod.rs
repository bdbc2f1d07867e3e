//! Numerical kernels shared by the physics modules.

pub mod lanczos;
pub mod pfaffian;
pub mod quadrature;
