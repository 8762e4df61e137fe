use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse scalar {input:?}: {message}")]
    Parse { input: String, message: String },

    #[error("expected a real scalar, got {0}")]
    NonReal(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Jacobi identity fails for (e{i}, e{j}, e{k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("the Lie algebra is not nilpotent")]
    NotNilpotent,

    #[error("subspace is not an ideal")]
    NotIdeal,

    #[error("subspace is not a subalgebra")]
    NotSubalgebra,

    #[error("not a complex structure: {0}")]
    NotComplexStructure(String),

    #[error("complex structure is not integrable")]
    NonIntegrable,

    #[error("invalid delta data: {0}")]
    InvalidDelta(String),

    #[error("malformed filtration: {0}")]
    MalformedFiltration(String),

    #[error("incompatible filtration: {0}")]
    IncompatibleFiltration(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownCatalogEntry(String),

    #[error("unknown complex structure {name:?} for {entry:?}")]
    UnknownComplexStructure { entry: String, name: String },

    #[error("schema violation: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
