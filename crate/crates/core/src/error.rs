use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be at least 1")]
    InvalidDimension(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("build dimension {requested} exceeds the configured cap {cap}")]
    ResourceCap { requested: usize, cap: usize },

    #[error("matrix is not symplectic (det = {0})")]
    NotSymplectic(f64),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("unknown topology `{0}` (expected q0, q1, s0, s1, hex or general:a,b)")]
    UnknownTopology(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported grid: {0}")]
    UnsupportedGrid(String),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("grid is not measurable with the recorded angles; required angles (rad): {required:?}")]
    UnmeasurableGrid { required: Vec<f64> },

    #[error("need samples at {needed} distinct angles, found {found}")]
    InsufficientAngles { needed: usize, found: usize },

    #[error("optimization failed: {0:?}")]
    OptimizationFailed(Vec<String>),

    #[error("invalid samples: {0}")]
    InvalidSamples(String),
}
