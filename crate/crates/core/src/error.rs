use std::path::PathBuf;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("sample {0} is not finite")]
    NonFiniteSample(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("computation did not converge: {0}")]
    NotComputable(&'static str),
    #[error("only one class present")]
    SingleClass,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("null distribution has zero spread")]
    DegenerateNull,
    #[error("p-value {0} outside [0, 1]")]
    InvalidPValue(f64),
    #[error("task column {0} has zero mean accuracy")]
    ZeroColumnMean(usize),
    #[error("feature row {0} has no computed entries")]
    AllMarkersRow(usize),
    #[error("feature row {0} is constant over shared tasks")]
    ConstantRow(usize),
    #[error("fewer than 3 shared tasks between features {0} and {1}")]
    InsufficientOverlap(usize, usize),
    #[error("curated feature `{name}` is not a member of cluster {cluster}")]
    CuratedNameNotInCluster { name: String, cluster: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{path}:{line}: malformed line: {reason}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("{0}: file contains no data")]
    EmptyFile(PathBuf),
    #[error("i/o failure on {path}: {message}")]
    IoFailure { path: PathBuf, message: String },
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, err: std::io::Error) -> Self {
        Error::IoFailure {
            path: path.into(),
            message: err.to_string(),
        }
    }

    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// True for errors caused by bad user input rather than numerical trouble.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Stage { source, .. } => source.is_input_error(),
            Error::DegenerateInput(_)
            | Error::NotComputable(_)
            | Error::DegenerateNull
            | Error::ZeroColumnMean(_)
            | Error::ConstantRow(_) => false,
            _ => true,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
