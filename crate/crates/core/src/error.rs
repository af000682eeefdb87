use alloc::string::String;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("operator maps states out of the {0} sector")]
    SectorViolation(String),
    #[error("expectation value has a non-negligible imaginary part ({0:e})")]
    NonHermitian(f64),
    #[error("lanczos did not converge after {iterations} matrix-vector products (best residual {best_residual:e})")]
    Convergence { iterations: usize, best_residual: f64 },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("inconsistent inputs: {0}")]
    InconsistentInputs(String),
    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),
}

pub type Result<T> = core::result::Result<T, Error>;
