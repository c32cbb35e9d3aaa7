use std::io;
use std::path::PathBuf;

use defect_forge_core::ErrorKind;

#[derive(Debug, thiserror::Error)]
pub enum ForgeError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Core(#[from] defect_forge_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl ForgeError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        ForgeError::Io {
            path: path.into(),
            source,
        }
    }

    /// True when the failure is a value outside the table.
    pub fn is_range(&self) -> bool {
        matches!(self, ForgeError::Core(e) if e.kind() == ErrorKind::Range)
    }
}

pub type Result<T> = std::result::Result<T, ForgeError>;
