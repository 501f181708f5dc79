use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Shapes or layer sizes that do not fit together.
    #[error("structural error: {0}")]
    Structure(String),

    /// A file that could be read but not understood.
    #[error("format error in {field}: {message}")]
    Format { field: String, message: String },

    /// IDX parse failure at a byte offset.
    #[error("{path}: parse error at byte {offset}: {message}")]
    Parse {
        path: PathBuf,
        offset: u64,
        message: String,
    },

    #[error("numerical error: {0}")]
    Numerical(String),

    /// The input graph must be connected for this measure.
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    /// Clique enumeration gave up.
    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("training diverged at epoch {epoch}: {message}")]
    Diverged { epoch: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Whether the failure came from reading or writing files, as opposed to
    /// bad parameters or numerics.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. } | Error::Parse { .. } | Error::Format { .. } | Error::Json(_) | Error::Csv(_)
        )
    }
}
