use thiserror::Error;

use crate::lattice::LatticeVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("generating set is empty")]
    EmptyGeneratingSet,

    #[error("zero vector is not allowed as a generator")]
    ZeroGenerator,

    #[error("generating set is not symmetric: {0} is present but its negative is not")]
    NotSymmetric(LatticeVector),

    #[error("generators span a proper subspace of R^{dim}")]
    NotFullRank { dim: usize },

    #[error("generators span a sublattice of index {index} instead of Z^{dim}")]
    NotGenerating { dim: usize, index: String },

    #[error("the zero vector has no sector")]
    ZeroVector,

    #[error("operation only supported in dimension {supported}, got {got}")]
    DimensionUnsupported { supported: usize, got: usize },

    #[error("ball of radius {requested} exceeds the point budget of {budget}; largest feasible radius is {largest_feasible}")]
    CapacityExceeded {
        requested: u32,
        largest_feasible: u32,
        budget: usize,
    },

    #[error("radius {requested} exceeds table radius {available}")]
    RadiusOutOfRange { requested: u32, available: u32 },

    #[error("sphere of radius {0} is empty")]
    EmptySphere(u32),

    #[error("Ehrhart fit mismatch: {0}")]
    FitMismatch(String),

    #[error("degenerate fitting window: {0}")]
    DegenerateWindow(String),

    #[error("functional is not homogeneous and has no limit integral")]
    NotHomogeneous,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("malformed generator config: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("malformed cache file: {0}")]
    CorruptCache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
