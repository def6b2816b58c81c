use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("universe size {0} exceeds the 64-element cap")]
    UniverseTooLarge(usize),
    #[error("element {element} is outside the universe [1, {universe}]")]
    ElementOutOfRange { element: usize, universe: usize },
    #[error("bit mask {mask:#x} has bits outside a universe of size {universe}")]
    MaskOutOfRange { mask: u64, universe: usize },
    #[error("rank {rank} out of range for C({n}, {k})")]
    RankOutOfRange { rank: u64, n: usize, k: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("set {0} is not a member of the family")]
    NotMember(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
