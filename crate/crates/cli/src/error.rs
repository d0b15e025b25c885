use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violation: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Scenario loading only: a core error raised while reading input (including
/// a derivation that does not preserve the relations) is a parse error.
impl From<folres_core::Error> for CliError {
    fn from(e: folres_core::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
