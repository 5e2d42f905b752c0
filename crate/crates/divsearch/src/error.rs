use std::path::PathBuf;

/// Errors produced by loaders, parsers and the selection pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A text input failed to parse. `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A parse error with the originating file attached.
    #[error("{path}: line {line}: {msg}")]
    ParseIn {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    /// A binary input failed to decode.
    #[error("invalid index data: {0}")]
    Decode(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A parameter outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A node label that the graph does not contain.
    #[error("unknown node label {0:?}")]
    UnknownLabel(String),

    /// Inputs that must refer to the same query disagree.
    #[error("query mismatch: {0}")]
    QueryMismatch(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Attach a file path to a bare parse error.
    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        match self {
            Error::Parse { line, msg } => Error::ParseIn {
                path: path.into(),
                line,
                msg,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
