use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("unsupported chain: {0}")]
    UnsupportedChain(String),

    #[error("site index {site} out of range for a chain of {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("invalid site selection: {0}")]
    InvalidSites(String),

    #[error("unphysical input: {0}")]
    Unphysical(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("{what} did not converge (residual {residual:.3e})")]
    NoConvergence { what: &'static str, residual: f64 },

    #[error("quadrature did not reach tolerance {tolerance:.1e} (estimated error {achieved:.3e})")]
    Quadrature { tolerance: f64, achieved: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("evaluation failed at grid point {parameter}: {source}")]
    AtGridPoint {
        parameter: f64,
        #[source]
        source: Box<Error>,
    },
}
