use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate equation: all coefficients are zero")]
    DegenerateEquation,

    #[error("radicands {0} and {1} are not compatible")]
    MixedRadicands(String, String),

    #[error("negative radicand {0}")]
    NegativeRadicand(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("expected {expected} picks, got {got}")]
    PickCount { expected: usize, got: usize },

    #[error("pick index {index} out of range for a cover with {centers} centers")]
    PickIndex { index: usize, centers: usize },

    #[error("t must be positive")]
    ZeroDepth,

    #[error("direction vector is zero")]
    ZeroDirection,

    #[error("point {0} is not on the plane")]
    OffPlane(String),

    #[error("support set is empty")]
    EmptySupport,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("rows {0:?} are not pierced by any line in the pool")]
    Uncoverable(Vec<usize>),

    #[error("record {index}: {message}")]
    Record { index: usize, message: String },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
