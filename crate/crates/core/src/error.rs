use thiserror::Error;

use crate::graph::GraphSpec;

pub type Result<T> = std::result::Result<T, Error>;

/// A vertex whose neighbourhood does not match the row of its color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotEquitable {
    pub vertex: u64,
    /// 0-based color of `vertex`.
    pub color: usize,
    pub expected_row: Vec<u32>,
    pub observed_row: Vec<u32>,
}

impl std::fmt::Display for NotEquitable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "vertex {} of color {} sees {:?}, expected {:?}",
            self.vertex,
            self.color + 1,
            self.observed_row,
            self.expected_row
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph D({m},{n}): {reason}")]
    InvalidSpec { m: u32, n: u32, reason: String },
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
    #[error("field elements from GF(2^{0}) and GF(2^{1}) cannot be combined")]
    FieldMismatch(u32, u32),
    #[error("unsupported field degree {0}")]
    UnsupportedField(u32),
    #[error("coloring is not perfect: {0}")]
    NotEquitable(Box<NotEquitable>),
    #[error("expected {expected} colors, found {found}")]
    WrongColorCount { expected: usize, found: usize },
    #[error("code has a single vertex, distance undefined")]
    SingletonCode,
    #[error("empty code")]
    EmptyCode,
    #[error("not completely regular: {0}")]
    NotCompletelyRegular(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid color grouping: {0}")]
    InvalidGrouping(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported graph {spec}: {reason}")]
    UnsupportedSpec { spec: GraphSpec, reason: String },
    #[error("quotient block structure mismatch: {0}")]
    BlockStructureMismatch(String),
    #[error("condition {item} violated: {msg}")]
    ConditionViolated { item: u32, msg: String },
    #[error("({b},{c}) is not admissible: {reason}")]
    NotAdmissible { b: u32, c: u32, reason: String },
    #[error("{spec} has {vertices} vertices, beyond the exhaustive limit; {hint}")]
    DeskScaleExceeded { spec: GraphSpec, vertices: u64, hint: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("search space exhausted without a solution")]
    Unsatisfiable,
    #[error("not found: {0}")]
    NotFound(String),
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExhausted { nodes: u64 },
    #[error("recipe error on line {line}: {msg}")]
    Recipe { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<NotEquitable> for Error {
    fn from(e: NotEquitable) -> Self {
        Error::NotEquitable(Box::new(e))
    }
}
