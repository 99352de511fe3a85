use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },

    #[error("graph6 line {line}: {message}")]
    Graph6 { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("undefined root count for the zero polynomial")]
    ZeroPolynomial,

    #[error("root not located: {0}")]
    RootNotLocated(String),

    #[error("spectral variable must exceed 2, got {0}")]
    LambdaOutOfRange(f64),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("empty candidate set for n={n}, D={d}")]
    EmptyCandidates { n: usize, d: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            message: message.into(),
        }
    }
}
