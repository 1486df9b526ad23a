use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("singular body: {0}")]
    Singular(String),
    #[error("grid too small: {0}")]
    GridTooSmall(String),
    #[error("support violation: {0}")]
    Support(String),
    #[error("CFL condition violated: {0}")]
    Cfl(String),
    #[error("parity violation: {0}")]
    Parity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
