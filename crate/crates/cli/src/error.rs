use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, schema violations, invalid parameters. Exit status 2.
    #[error("config error: {0}")]
    Config(String),
    /// A numeric operation failed. Exit status 1.
    #[error("{op} failed: {source}")]
    Numeric {
        op: &'static str,
        #[source]
        source: susyqm::Error,
    },
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }

    pub fn config(field: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Config(format!("{field}: {msg}"))
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

/// Tags a core error with the operation that produced it.
pub trait Op<T> {
    fn op(self, name: &'static str) -> Result<T, CliError>;
}

impl<T> Op<T> for susyqm::Result<T> {
    fn op(self, name: &'static str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Numeric { op: name, source })
    }
}
