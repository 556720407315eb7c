use thiserror::Error;

/// Errors raised by distribution construction and by the numerical routines.
///
/// Infinite divergences are not errors; they are returned as `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty distribution")]
    Empty,

    #[error("length mismatch: {points} points but {values} values")]
    LengthMismatch { points: usize, values: usize },

    #[error("duplicate point {0}")]
    DuplicatePoint(f64),

    #[error("negative mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },

    #[error("not normalized: total mass {0}")]
    NotNormalized(f64),

    #[error("non-finite value at index {0}")]
    NonFiniteValue(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite integrand")]
    NonFiniteIntegrand,

    #[error("degenerate density: total mass {0}")]
    DegenerateDensity(f64),

    #[error("incompatible supports")]
    IncompatibleSupports,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("M_q diverges on grid (q = {0})")]
    GeneratingFunctionDiverges(f64),

    #[error("escort undefined for order {0}")]
    EscortUndefined(f64),

    #[error("moment diverges")]
    MomentDiverges,

    #[error("partition function diverges: {0}")]
    PartitionDiverges(String),

    #[error("invalid parameter region: {0}")]
    InvalidRegion(String),

    #[error("a-moment diverges: {0}")]
    AMomentDiverges(String),

    #[error("outside parameter domain: {0}")]
    OutsideDomain(String),

    #[error("constraint infeasible at this resolution")]
    Infeasible,

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
