use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("faces {0} and {1} overlap")]
    Overlap(usize, usize),
    #[error("mesh is disconnected: {0}")]
    Disconnected(String),
    #[error("domain is not simply connected (V - E + F = {0})")]
    NotSimplyConnected(i64),
    #[error("malformed mesh: {0}")]
    Malformed(String),
    #[error("deficits {0} and {1} are not comparable")]
    UnorderedDeficits(String, String),
    #[error("deficit set does not contain (0,0)")]
    MissingZero,
    #[error("invalid level sequence: {0}")]
    InvalidSequence(String),
    #[error("smoothness conflict on line {0}: {1}")]
    ChainConflict(String, String),
    #[error("override {0} matches no interior edge")]
    DanglingOverride(usize),
    #[error("level index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("generators are not all powers of forms in one direction")]
    MixedDirection,
    #[error("{0} interior segments exceed the exhaustive ordering limit of 8")]
    TooManyForExhaustive(usize),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("euler characteristic mismatch: decomposed {chi}, direct {chi_direct}")]
    DecompositionMismatch { chi: i64, chi_direct: i64 },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AssumptionViolated(_) => 2,
            Error::DecompositionMismatch { .. } => 3,
            _ => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
