use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("not a full embedding: {0}")]
    NotFullEmbedding(String),

    #[error("not full: {0}")]
    NotFull(String),

    #[error("not D-monic: {0}")]
    NotDMonic(String),

    /// A hypothesis of a construction fails on the given input.
    #[error("hypothesis `{hypothesis}` fails: {witness}")]
    Hypothesis { hypothesis: String, witness: String },

    /// The input contradicts a statement that holds for every genuine instance,
    /// e.g. a missing ladder completion in a triangle table.
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn hypothesis(hypothesis: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Hypothesis { hypothesis: hypothesis.into(), witness: witness.into() }
    }
}
