use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("level must be a positive even integer, got {0}")]
    OddLevel(i64),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a Lagrangian: {0}")]
    NotLagrangian(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("size guard exceeded: {0}")]
    Guard(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Invalid(_) | Error::Shape(_) | Error::NotLagrangian(_) | Error::OddLevel(_) => 1,
            Error::Guard(_) => 2,
            Error::LevelMismatch(..) | Error::Consistency(_) => 3,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_level(n: i64) -> Result<u32> {
    if n <= 0 || n % 2 != 0 || n > 1 << 20 {
        return Err(Error::OddLevel(n));
    }
    Ok(n as u32)
}
