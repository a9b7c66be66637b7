use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown family name `{0}`")]
    UnknownFamily(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("base size {size} exceeds the supported maximum {max}")]
    BaseTooLarge { size: usize, max: usize },
    #[error("empty family or empty base")]
    Empty,
    #[error("base size mismatch: expected {expected}, found {found}")]
    BaseMismatch { expected: usize, found: usize },
    #[error("function {0} is not a member of the family")]
    NotAMember(String),
    #[error("malformed permutation: {0}")]
    BadPermutation(String),
    #[error("subset {0:#x} is not contained in the base")]
    NotASubset(u32),
    #[error("functions have mixed weights; design check needs constant weight")]
    MixedWeights,
    #[error("vc-dimension {vc} exceeds the requested bound {bound}")]
    VcTooLarge { vc: usize, bound: usize },
    #[error("sample {0} is not a partial function of the family")]
    NotATrace(String),
    #[error("expected a 3-element set, got {0} elements")]
    NotATriple(usize),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid selector `{token}`: {message}")]
    Selector { token: String, message: String },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("sat solver error: {0}")]
    Solver(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
