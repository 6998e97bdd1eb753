use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Every variant maps to a stable machine-readable code through [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("width {0} exceeds the supported maximum of 64 coordinates")]
    TooWide(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("selected pivot columns are linearly dependent")]
    SingularPivots,
    #[error("no facets given")]
    EmptyInput,
    #[error("complex is not pure: facet sizes {expected} and {found}")]
    NotPure { expected: usize, found: usize },
    #[error("vertex {0} appears in no facet")]
    GhostVertex(usize),
    #[error("vertex {vertex} is outside 1..={m}")]
    BadVertex { vertex: usize, m: usize },
    #[error("vertex {0} repeated inside a facet")]
    DuplicateVertex(usize),
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Vec<usize>),
    #[error("the face {{1..n}} is not a facet; relabel the complex first")]
    NotFacetFirst,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("matrix violates the non-singularity condition")]
    NonSingularityViolated,
    #[error("maps are not adjacent at vertex {0} with the given label")]
    NotAdjacent(usize),
    #[error("square edges are not present in the prediagram")]
    InvalidEdges,
    #[error("board has {nodes} nodes, above the cap of {cap}")]
    Overflow { nodes: u128, cap: u128 },
    #[error("search space of {size} exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("puzzle is not realizable: {0}")]
    NotRealizable(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::TooWide(_) => "E_TOO_WIDE",
            Error::ShapeMismatch(_) => "E_SHAPE",
            Error::SingularPivots => "E_SINGULAR_PIVOTS",
            Error::EmptyInput => "E_EMPTY",
            Error::NotPure { .. } => "E_NOT_PURE",
            Error::GhostVertex(_) => "E_GHOST_VERTEX",
            Error::BadVertex { .. } => "E_BAD_VERTEX",
            Error::DuplicateVertex(_) => "E_DUPLICATE_VERTEX",
            Error::NotAFace(_) => "E_NOT_A_FACE",
            Error::NotFacetFirst => "E_NOT_FACET_FIRST",
            Error::LengthMismatch { .. } => "E_LENGTH_MISMATCH",
            Error::NonSingularityViolated => "E_NON_SINGULARITY",
            Error::NotAdjacent(_) => "E_NOT_ADJACENT",
            Error::InvalidEdges => "E_INVALID_EDGES",
            Error::Overflow { .. } => "E_OVERFLOW",
            Error::CapExceeded { .. } => "E_CAP_EXCEEDED",
            Error::NotRealizable(_) => "E_NOT_REALIZABLE",
            Error::Parse { .. } => "E_PARSE",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
