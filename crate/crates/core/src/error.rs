use thiserror::Error;

/// Errors raised by state construction and cloner analysis.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register too large: {wires} wires exceeds the maximum of {max}")]
    RegisterTooLarge { wires: usize, max: usize },

    #[error("dimension {0} is not a positive power of two")]
    NotPowerOfTwo(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (squared norm {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("non-finite amplitude")]
    NonFinite,

    #[error("wire {wire} out of range for a {wires}-wire register")]
    WireOutOfRange { wire: usize, wires: usize },

    #[error("invalid wire selection: {0}")]
    InvalidWireSelection(String),

    #[error("impossible outcome: probability {probability} is below the resolvable floor")]
    ImpossibleOutcome { probability: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unitary (deviation {deviation})")]
    NotUnitary { deviation: f64 },

    #[error("columns are not orthonormal (deviation {deviation})")]
    NotOrthonormal { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid Bell label: {0}")]
    InvalidBellLabel(String),

    #[error("invalid cloning amplitudes: {0}")]
    InvalidAmplitudes(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("parameters are outside the reducible family: {0}")]
    NotInReducibleFamily(String),

    #[error("decomposition is not reducible")]
    NotReducible,

    #[error("optimizer did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
