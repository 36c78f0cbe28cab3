use thiserror::Error;

/// Errors produced by the approximation pipeline.
#[derive(Error, Debug)]
pub enum Error {
    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("all singular values truncated; system is degenerate")]
    DegenerateSystem,

    #[error("constraint vector has vanishing norm; unknown is undetermined")]
    NoConstraint,

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("nodes are not strictly increasing (gap below tolerance near index {0})")]
    DuplicateNodes(usize),

    #[error("node {0} lies outside the extension interval")]
    NodeOutOfRange(usize),

    #[error("unknown builtin curve '{0}'")]
    UnknownCurve(String),

    #[error("unknown test function '{0}'")]
    UnknownFunction(String),

    #[error("partition failure: boundary arc in cell ({0}, {1}) cannot be made single-valued; increase K")]
    PartitionFailure(usize, usize),

    #[error("subdivision coordinate {coord} outside patch range [{lo}, {hi}]")]
    InvalidSplit { coord: f64, lo: f64, hi: f64 },

    #[error("cover fit is rank deficient")]
    DegenerateFit,

    #[error("no discarded singular direction; completion impossible")]
    CompletionImpossible,

    #[error("artificial node carries no weight in discarded directions")]
    UnconstrainedUnknown,

    #[error("column segment height below tolerance (degenerate column)")]
    DegenerateColumn,

    #[error("oracle returned non-finite value at ({0}, {1})")]
    OracleFailure(f64, f64),

    #[error("calibration scan exhausted: {0}")]
    ScanExhausted(String),

    #[error("bad config line {line}: {msg}")]
    BadConfig { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
