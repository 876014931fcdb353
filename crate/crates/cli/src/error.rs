use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{}", located(path, *line, *col, msg))]
    Parse {
        path: String,
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] qcskit::Error),
}

/// Semantic errors raised after the JSON parsed carry no position.
fn located(path: &str, line: usize, col: usize, msg: &str) -> String {
    if line == 0 {
        format!("{path}: {msg}")
    } else {
        format!("{path}:{line}:{col}: {msg}")
    }
}

macro_rules! via_core {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        }
    )*};
}

via_core!(
    qcskit::HermError,
    qcskit::QcsError,
    qcskit::ChoiError,
    qcskit::FrobeniusError,
    qcskit::BordError,
    qcskit::MsError
);
