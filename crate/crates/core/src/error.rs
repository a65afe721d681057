use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix entries are not all finite")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("trace deviation {deviation:.1e} exceeds tolerance")]
    TraceDeviation { deviation: f64 },

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off_diagonal:.3e})")]
    NotConverged { sweeps: usize, off_diagonal: f64 },

    #[error("invalid subsystem index {index}, expected 1 or 2")]
    InvalidSubsystem { index: usize },

    #[error("state is not bipartite (subsystem dims {dims:?})")]
    NotBipartite { dims: Vec<usize> },

    #[error("subsystem dims {dims:?} do not multiply to {dim}")]
    InvalidSubsystemDims { dims: Vec<usize>, dim: usize },

    #[error("invalid direction: theta {theta}, phi {phi}")]
    InvalidDirection { theta: f64, phi: f64 },

    #[error("invalid probability vector: {0}")]
    InvalidProbability(String),

    #[error("tomogram diagonal has imaginary residual {residual:.3e}")]
    ComplexDiagonal { residual: f64 },

    #[error("invalid X-state parameters: {0}")]
    InvalidXState(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
