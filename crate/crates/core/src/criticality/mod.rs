//! Parameter sweeps of phase-space observables, finite differences, and
//! detectors for divergences, jumps, cusps and the XY factorization line.

mod detect;
mod diff;
mod entanglement;
mod scan;
mod sweep;

pub use detect::{
    detect_cusp, detect_discontinuity, detect_divergence, divergence_from_levels, find_cusps,
    find_discontinuities, DetectionKind, DetectionReport, DetectorConfig, FnProbe, Level, Probe,
    Target,
};
pub use diff::{finite_diff, finite_diff_values};
pub use entanglement::{concurrence_pair, concurrence_simplified, dwf_negativity};
pub use scan::{factorization_scan, FactorizationReport, ScanOptions};
pub use sweep::{
    evaluate, run_sweep, uniform_grid, Backend, Observable, SweepProbe, SweepResult, SweepSpec,
    DEFAULT_XXZ_SITES, MAX_REFINEMENT_LEVELS, MIN_SWEEP_POINTS,
};
