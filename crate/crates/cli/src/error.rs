use rclkit_core::Error as CoreError;

use crate::lexer::{Diagnostic, Pos};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Syntax(#[from] Diagnostic),

    /// A declaration was rejected by the engine while being built.
    #[error("{pos}: {kind} `{name}`: {source}")]
    Declaration { pos: Pos, kind: &'static str, name: String, source: CoreError },

    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Engine(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) | CliError::Input(_) | CliError::Declaration { .. } => 2,
            CliError::Engine(source) => core_exit_code(source),
        }
    }
}

pub fn core_exit_code(e: &CoreError) -> i32 {
    match e {
        CoreError::Inconsistent(_) => 3,
        CoreError::Hypothesis { .. } | CoreError::NotFull(_) | CoreError::NotDMonic(_) | CoreError::NotFullEmbedding(_) => 1,
        CoreError::InvalidField(_)
        | CoreError::DimensionMismatch(_)
        | CoreError::UnknownGenerator(_)
        | CoreError::BoundaryMismatch(_) => 2,
    }
}
