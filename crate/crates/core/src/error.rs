use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("word is not a valid element of this presentation")]
    PresentationMismatch,

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("vertex `{0}` in the support has finite order")]
    FiniteOrderVertexInSupport(String),

    #[error("the identity element has no block structure")]
    IdentityElement,

    #[error("element is not cyclically reduced")]
    NotCyclicallyReduced,

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("vertex `{0}` is not abelian-primitive")]
    NotAbelianPrimitive(String),

    #[error("assignment has no value for `{0}`")]
    IncompleteAssignment(String),

    #[error("instance is not flattened: {0}")]
    NotFlattened(String),

    #[error("target must be a free group of rank at least 2")]
    RankTooSmall,

    #[error("target group is abelian")]
    AbelianTarget,

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("presentation has infinite abelianisation")]
    InfiniteAbelianisation,

    #[error("not an integer solution: {0}")]
    NotAnIntegerSolution(String),

    #[error("assignment does not satisfy the compiled instance")]
    NotASolution,

    #[error("decoded values violate the source equations: {0}")]
    DecodeInconsistency(String),

    #[error("radius {radius} exceeds the configured cap {cap}")]
    RadiusCapExceeded { radius: usize, cap: usize },

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
