use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("monomials have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("monomials have different degrees ({0} vs {1})")]
    DegreeMismatch(u32, u32),
    #[error("offset components sum to {0}, expected 0")]
    NonZeroSum(i64),
    #[error("monomials of mixed degrees in one set")]
    MixedDegrees,
    #[error("invalid term order matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),
    #[error("not a Hilbert polynomial: {0}")]
    NotHilbertPolynomial(String),
    #[error("improper subscheme: {0}")]
    ImproperSubscheme(String),
    #[error("infeasible level profile: level {level} has count {count}")]
    InfeasibleProfile { level: usize, count: i64 },
    #[error("Gotzmann number is 0, nothing to enumerate")]
    EmptyDegree,
    #[error("ideals live in different contexts")]
    ContextMismatch,
    #[error("edge label does not match the pair of ideals")]
    LabelMismatch,
    #[error("not a bijection between the two difference sets")]
    NotAPairing,
    #[error("weight comparison ties on a deciding pair")]
    AmbiguousUnderWeights,
    #[error("degeneration graph has undirected edges")]
    MixedGraph,
    #[error("no hilb-segment ideal for the chosen term order")]
    NoSegmentIdeal,
    #[error("reference ideal is not a hilb-segment ideal")]
    NotSegment,
    #[error("the two ideals coincide")]
    SameIdeal,
    #[error("cone reduces to the origin")]
    EmptyCone,
    #[error("slices are only drawn for n = 2 or n = 3, got n = {0}")]
    UnsupportedDimension(usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("unknown order family `{0}`")]
    UnknownOrder(String),
    #[error("{0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
