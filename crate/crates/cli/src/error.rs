use std::io;

use thiserror::Error;

use crate::hex::HexError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] walshcode_core::Error),
    #[error("{field}: {source}")]
    Hex { field: String, source: HexError },
    #[error("descriptor: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("validation failed\n{0}")]
    Validation(String),
    #[error("certification failed: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn hex(field: &str, source: HexError) -> CliError {
        CliError::Hex { field: field.to_string(), source }
    }

    pub fn exit_code(&self) -> i32 {
        use walshcode_core::Error as E;
        match self {
            CliError::Core(e) => match e {
                E::UnsupportedN(_) => 3,
                E::BadSubfieldDegree { .. }
                | E::NotCosetClosed { .. }
                | E::HypothesisViolation(_)
                | E::EmptyDefiningSet
                | E::Condition26Failed { .. } => 4,
                _ => 2,
            },
            CliError::Validation(_) => 4,
            CliError::Mismatch(_) | CliError::Io(_) => 1,
            CliError::Hex { .. } | CliError::Json(_) | CliError::Usage(_) | CliError::UnknownFamily(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
