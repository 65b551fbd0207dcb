use thiserror::Error;

/// Errors raised by the smoothing, estimation and statistics routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field must have at least one axis")]
    EmptyDims,
    #[error("axis {axis} has zero extent")]
    ZeroExtent { axis: usize },
    #[error("spacing along axis {axis} must be positive and finite, got {value}")]
    InvalidSpacing { axis: usize, value: f64 },
    #[error("expected {expected} values for the given dims, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite value at flat index {index}")]
    NonFinite { index: usize },
    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("sigma must be positive and finite, got {0}")]
    InvalidSigma(f64),
    #[error("radius must be at least 1")]
    InvalidRadius,
    #[error("FWHM must be non-negative and finite, got {0}")]
    InvalidFwhm(f64),
    #[error("axis {axis} out of range for rank {rank}")]
    AxisOutOfRange { axis: usize, rank: usize },
    #[error("sigma list must be non-empty and strictly ascending")]
    BadSigmaList,
    #[error("ensemble needs at least 2 images, got {0}")]
    TooFewImages(usize),
    #[error("image {index} does not share dims/spacing with image 0")]
    EnsembleMismatch { index: usize },
    #[error("sum of squared residuals is zero at voxel {voxel}")]
    ZeroResidual { voxel: usize },
    #[error("voxels {a} and {b} are not adjacent along a single axis")]
    NotAdjacent { a: usize, b: usize },
    #[error("voxel index {0} out of range")]
    VoxelOutOfRange(usize),
    #[error("every axis needs extent >= 2 to form edges")]
    NoEdges,
    #[error("sample set must be non-empty")]
    EmptySample,
    #[error("need at least {needed} samples, got {found}")]
    TooFewSamples { needed: usize, found: usize },
    #[error("probability {0} outside the admissible range")]
    InvalidProbability(f64),
    #[error("rate must be positive and finite, got {0}")]
    InvalidRate(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
