use std::path::{Path, PathBuf};

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: invalid UTF-8 at byte offset {offset}", display_path(.path))]
    Encoding {
        path: Option<PathBuf>,
        offset: usize,
    },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("no categories found under {}", .0.display())]
    EmptyCorpus(PathBuf),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{}:{line}: {message}", display_path(.path))]
    Format {
        path: Option<PathBuf>,
        line: usize,
        message: String,
    },

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("class `{class_id}` has no usable training examples")]
    InsufficientData { class_id: String },
}

fn display_path(path: &Option<PathBuf>) -> String {
    path.as_deref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "<input>".to_string())
}

impl Error {
    pub(crate) fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    pub(crate) fn format(path: Option<&Path>, line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            path: path.map(Path::to_path_buf),
            line,
            message: message.into(),
        }
    }

    /// Process exit code for the command-line front end: 2 for I/O and
    /// usage problems, 1 for data and validation problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::InvalidArgument(_) => 2,
            Error::Encoding { .. }
            | Error::EmptyCorpus(_)
            | Error::Format { .. }
            | Error::Integrity(_)
            | Error::InsufficientData { .. } => 1,
        }
    }
}
