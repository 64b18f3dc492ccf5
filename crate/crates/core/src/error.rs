use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector does not lie in the numerator lattice")]
    NotInLattice,

    #[error("relation lattice is not contained in the numerator lattice")]
    RelationsNotContained,

    #[error("homomorphism is not well defined on torsion generator {0}")]
    IllDefinedHom(usize),

    #[error("unknown space `{0}`")]
    UnknownSpace(String),

    #[error("invalid space definition: {0}")]
    InvalidSpace(String),

    #[error("space file parse error: {0}")]
    Parse(String),

    #[error("edge path is broken at step {0}")]
    BrokenPath(usize),

    #[error("path runs from vertex {found_start} to {found_end}, expected {expected_start} to {expected_end}")]
    PathEndpoints {
        expected_start: usize,
        expected_end: usize,
        found_start: usize,
        found_end: usize,
    },

    #[error("reverse traversal of edge {0} is not supported here")]
    ReversedEdge(usize),

    #[error("generator index {0} out of range")]
    UnknownGenerator(usize),

    #[error("truncation degree {0} is not allowed here")]
    BadDegree(usize),

    #[error("degree {k} out of range 1..={n}")]
    DegreeOutOfRange { k: usize, n: usize },

    #[error("elements belong to different rings")]
    RingMismatch,

    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),

    #[error("presentation has no distinguished edge from a to b")]
    MissingDistinguishedEdge,

    #[error("models are not at consecutive truncation levels ({0} -> {1})")]
    NonConsecutive(usize, usize),

    #[error("element does not lie in the compatibility kernel")]
    NotInKernel,

    #[error("resource cap exceeded: {what} needs more than {cap} simplices")]
    ResourceCap { what: String, cap: usize },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
