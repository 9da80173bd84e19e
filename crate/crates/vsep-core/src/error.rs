use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{requested} qubits exceed the supported cap of {cap}")]
    QubitCapExceeded { requested: usize, cap: usize },

    #[error("expected dimension {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("state not normalized: |deviation| = {deviation:.3e} exceeds tolerance {tolerance:.1e}")]
    NotNormalized { deviation: f64, tolerance: f64 },

    #[error("matrix not Hermitian: max |ρ - ρ†| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("matrix not positive semidefinite: eigenvalue {eigenvalue:.3e} below -{tolerance:.1e}")]
    NotPositive { eigenvalue: f64, tolerance: f64 },

    #[error("qubit index {index} out of range 1..={n_qubits}")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("circuit takes {expected} parameters, got {got}")]
    ParamCount { expected: usize, got: usize },

    #[error("optimization aborted: every restart hit a non-finite cost")]
    NonFiniteCost,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
