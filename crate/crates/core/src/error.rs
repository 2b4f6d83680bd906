use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("value outside the operation's domain: {0}")]
    Domain(String),

    #[error("degenerate point: every objective coincides with the reference point")]
    DegeneratePoint,

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),

    #[error("normalization bounds are degenerate on objective {0}")]
    DegenerateAxis(usize),

    #[error("no archive member satisfies the positive-gap condition; adaptation skipped")]
    NoEligibleArchiveMember,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
