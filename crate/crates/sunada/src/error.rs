use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] sunada_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no subgroup named {0:?}")]
    UnknownSubgroup(String),
    #[error("{0}")]
    Usage(String),
    #[error("eigensolver did not converge")]
    ConvergenceFailure,
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax { line, message: message.into() }
    }

    /// Whether the failure is a failed mathematical check rather than bad
    /// input.
    pub fn is_check_failure(&self) -> bool {
        matches!(
            self,
            Error::Core(sunada_core::Error::CrossCheck(_) | sunada_core::Error::KernelCertificate)
                | Error::ConvergenceFailure
        )
    }
}

pub(crate) fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })
}
