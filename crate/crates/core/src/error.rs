use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("first string is not a subsequence of the second")]
    NotASubsequence,

    #[error("column index {index} out of range for alignment of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid alignment: {0}")]
    InvalidAlignment(String),
    #[error("alignment has no columns")]
    EmptyAlignment,

    #[error("invalid DAG: {0}")]
    InvalidDag(String),
    #[error("string is empty; a DAG needs at least one node")]
    EmptyString,
    #[error("DAG has no unique sink")]
    NonUniqueSink,
    #[error("DAG has no unique source")]
    NonUniqueSource,
    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("DAG is not coverable by two paths")]
    NotCoverable,
    #[error("paths do not jointly cover the DAG")]
    CoverViolated,
    #[error("paths are required to be disjoint but share node {0}")]
    DisjointnessViolated(usize),
    #[error("unsupported solver options: {0}")]
    UnsupportedOptions(String),

    #[error("impossible parameters: {0}")]
    ImpossibleParameters(String),
    #[error("no valid string found after {0} attempts")]
    RetriesExhausted(usize),
    #[error("invalid LCS instance: {0}")]
    InvalidInstance(String),
    #[error("parameters do not match the instance: {0}")]
    ParameterMismatch(String),
    #[error("string is not a common subsequence of the inputs")]
    NotCommonSubsequence,
    #[error("construction mismatch: {0}")]
    ConstructionMismatch(String),
    #[error("no window of consecutive gadget stages carries a common green strand")]
    NoCanonicalInterval,
    #[error("missing column metadata: {0}")]
    MissingColumnMetadata(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// True for rejections caused by enumeration or size guards.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::InstanceTooLarge(_))
    }
}
