use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("index {index} out of range 1..={n} in {context}")]
    IndexOutOfRange {
        context: &'static str,
        index: usize,
        n: usize,
    },

    #[error("non-finite entry at position {position} in {context}")]
    NonFinite {
        context: &'static str,
        position: usize,
    },

    #[error("empty input in {context}")]
    Empty { context: &'static str },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("operation requires an undirected graph: {0}")]
    DirectedGraph(&'static str),

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {defect:.3e})")]
    NotSymmetric { defect: f64 },

    #[error("basis validation failed: max orthonormality defect {defect:.3e} exceeds {tolerance:.3e}")]
    NotOrthonormal { defect: f64, tolerance: f64 },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("irreducible representation set rejected: {0}")]
    InvalidIrrepSet(String),

    #[error("generating set rejected: {0}")]
    InvalidGeneratingSet(String),

    #[error("generating set is not closed under conjugation (g s g^-1 leaves S for g={g}, s={s})")]
    NotConjugationClosed { g: usize, s: usize },

    #[error("window is zero; the vectors do not form a frame")]
    ZeroWindow,

    #[error("not a frame: lower bound {lower:.3e} is below the threshold {threshold:.3e}")]
    NotAFrame { lower: f64, threshold: f64 },

    #[error("matrix pencil requires a positive definite right-hand side (min eigenvalue {min_eig:.3e})")]
    PencilNotPositiveDefinite { min_eig: f64 },

    #[error("Gram matrix C_{k} is singular (min eigenvalue {min_eig:.3e}); cannot form the pencil")]
    SingularGram { k: usize, min_eig: f64 },

    #[error("eigensolver failed: {0}")]
    EigensolverFailure(String),

    #[error("parse error in {path} at line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema violation in {path}: {message}")]
    Schema { path: String, message: String },

    #[error("validator rejected {path}: {source}")]
    Validator {
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o failure on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
