use thiserror::Error;

/// Errors raised by the library. Budget exhaustion in quotient enumeration
/// and rank search is reported as a value, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid degree {0}: must be between 1 and 255")]
    InvalidDegree(usize),

    #[error("image {image} at position {position} is out of range for degree {degree}")]
    ImageOutOfRange {
        position: usize,
        image: usize,
        degree: usize,
    },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("could not parse transformation {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{what} exceeds budget: {requested} > {limit}")]
    Budget {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("letter {0:?} has no assigned transformation")]
    UnassignedLetter(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("not a monoid: {0}")]
    NotAMonoid(String),

    #[error("transformation is not an element of the monoid")]
    NotAMember,

    #[error("assignment does not generate the target monoid")]
    NotGenerating,

    #[error("empty generator list")]
    NoGenerators,
}

pub type Result<T> = std::result::Result<T, Error>;
