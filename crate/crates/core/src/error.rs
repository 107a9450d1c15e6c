use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("quiver has no vertices")]
    EmptyQuiver,
    #[error("vector has {got} entries but the quiver has {expected} vertices")]
    WrongQuiver { expected: usize, got: usize },
    #[error("edges {0:?} do not form a path")]
    NotAPath(Vec<String>),
    #[error("path is not closed")]
    OpenPath,
    #[error("vertex `{0}` is a source or a sink")]
    SourceOrSink(String),
    #[error("incompatible multidegree: {0}")]
    MultiDegree(String),
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("variables from incompatible ring contexts: {0}")]
    IncompatibleContext(String),
    #[error("format mismatch: {0}")]
    Format(String),
    #[error("matrix has an odd entry at ({0}, {1})")]
    OddEntry(usize, usize),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid det-like specification: {0}")]
    DetLike(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("resource cap exceeded: {size} > {cap}")]
    ResourceCap { size: usize, cap: usize },
    #[error("Ringel form violated: ext = {0} < 0")]
    NegativeExt(i64),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
