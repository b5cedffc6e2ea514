use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("granular ball must have at least one member")]
    EmptyBall,
    #[error("instance index {index} out of range for dataset of {n} rows")]
    BadIndex { index: usize, n: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("cannot split a member set of size {0}")]
    TooSmallToSplit(usize),
    #[error("split is degenerate (all members coincide)")]
    DegenerateSplit,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("only {balls} balls for k = {k} clusters")]
    TooFewBalls { balls: usize, k: usize },
    #[error("only {points} points for k = {k} clusters")]
    TooFewPoints { points: usize, k: usize },
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("matrix is not symmetric (|a[{i}][{j}] - a[{j}][{i}]| = {diff:e})")]
    NotSymmetric { i: usize, j: usize, diff: f64 },
    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    EigFailed { sweeps: usize, off: f64 },
    #[error("label sequences differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },
    #[error("row {row} has {found} fields, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown synthetic shape {0:?}")]
    UnknownShape(String),
}

pub type Result<T> = std::result::Result<T, Error>;
