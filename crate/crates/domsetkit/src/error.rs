use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] domset::Error),

    #[error("cannot access {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    /// The result violates what the command promises.
    #[error("contract failure: {0}")]
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use domset::Error as E;
        match self {
            CliError::Lib(E::Parse { .. } | E::Input(_)) | CliError::Io { .. } => 2,
            CliError::Lib(E::Resource { .. }) => 4,
            CliError::Lib(_) | CliError::Contract(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
