use thiserror::Error;

/// Errors raised while validating inputs, building or evaluating a spline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplineError {
    #[error("need at least 2 control points, got {0}")]
    TooFewPoints(usize),

    #[error("tau has {tau} entries but F has {values}")]
    LengthMismatch { tau: usize, values: usize },

    #[error("expected {expected} alpha values (one per interval), got {got}")]
    AlphaCount { expected: usize, got: usize },

    #[error("non-finite value {field}[{index}]")]
    NonFinite { field: &'static str, index: usize },

    #[error("tau must be strictly increasing: tau[{index}]={value} <= tau[{}]={previous}", .index - 1)]
    NonIncreasing {
        index: usize,
        previous: f64,
        value: f64,
    },

    #[error("alpha[{index}]={value} outside (0, 1)")]
    AlphaOutOfDomain { index: usize, value: f64 },

    #[error("alpha[{index}]={value} outside [1/3, 2/3]")]
    AlphaOutsideStrictRange { index: usize, value: f64 },

    #[error("coincident consecutive points at index {index}")]
    CoincidentPoints { index: usize },

    #[error("tridiagonal system rows have inconsistent lengths")]
    SystemShape,

    #[error("zero pivot at row {row}")]
    SingularPivot { row: usize },

    #[error("row {row} is not diagonally dominant (margin {margin:e})")]
    NotDominant { row: usize, margin: f64 },

    #[error("x={x} outside spline domain [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },

    #[error("sample count must be at least 2, got {0}")]
    SampleCount(usize),
}

impl SplineError {
    /// True for errors caused by caller-supplied data (as opposed to a
    /// numerical breakdown in the solver).
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            SplineError::SingularPivot { .. } | SplineError::NotDominant { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, SplineError>;
