use thiserror::Error;

use crate::identify::IdentifiabilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex `{vertex}` is not in the subset")]
    VertexNotInSubset { vertex: String },

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("loop on vertex `{0}`")]
    SelfLoop(String),

    #[error("duplicate edge {0}")]
    DuplicateEdge(String),

    #[error("directed cycle: {}", cycle.join(" -> "))]
    CycleDetected { cycle: Vec<String> },

    #[error("no such edge {0}")]
    NoSuchEdge(String),

    #[error("edge {0} already exists")]
    EdgeExists(String),

    #[error("adding {edge} would create the directed cycle {}", cycle.join(" -> "))]
    WouldCreateCycle { edge: String, cycle: Vec<String> },

    #[error("`{to}` is not a proper descendant of `{from}`")]
    NotADescendant { from: String, to: String },

    #[error("{what} is not positive definite")]
    NotPositiveDefinite { what: String },

    #[error("conditioning block {{{}}} is singular", block.join(","))]
    SingularConditioningBlock { block: Vec<String> },

    #[error("trek count {count} between `{from}` and `{to}` exceeds the cap {cap}")]
    TrekExplosion {
        from: String,
        to: String,
        count: f64,
        cap: usize,
    },

    #[error("sample covariance needs at least 2 rows, got {0}")]
    TooFewRows(usize),

    #[error("dataset needs at least one row")]
    EmptyDataset,

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("label mismatch: missing [{}], unexpected [{}]", missing.join(","), extra.join(","))]
    LabelMismatch {
        missing: Vec<String>,
        extra: Vec<String>,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("not identifiable: {}", .0.summary())]
    NotIdentifiable(Box<IdentifiabilityReport>),

    #[error("no complete removal plan; longest valid prefix has {} step(s)", prefix.len())]
    NoPlanFound { prefix: Vec<String> },

    #[error("invalid removal plan: {0}")]
    PlanInvalid(String),

    #[error("expected a {expected}x{expected} covariance, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("could not generate a valid model after {0} attempts")]
    GenerationFailed(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by numerics rather than by input structure.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotPositiveDefinite { .. }
                | Error::SingularConditioningBlock { .. }
                | Error::TrekExplosion { .. }
        )
    }
}
