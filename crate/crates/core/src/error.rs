use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("connection set mod {modulus} is not closed under negation (contains {residue})")]
    NotSymmetric { modulus: usize, residue: usize },
    #[error("connection set mod {modulus} rejected: {detail}")]
    MinusOneNotInSet { modulus: usize, detail: String },
    #[error("graph contains K4 on vertices {0:?}")]
    ContainsK4([usize; 4]),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error("dimension mismatch: matrix has order {expected}, vector has length {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty matrix")]
    Empty,
    #[error("factorization of A - sigma*I hit a zero pivot at row {row}: indefinite at sigma = {sigma}")]
    IndefiniteAtSigma { sigma: f64, row: usize },
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CutError {
    #[error("cut has length {got} but the graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cut entry {index} is {value}, expected -1 or +1")]
    InvalidEntry { index: usize, value: i8 },
    #[error("brute force limited to {limit} vertices, got {got}")]
    TooLarge { limit: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}
