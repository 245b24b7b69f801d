use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid step graphon: {0}")]
    InvalidGraphon(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The input is outside the size range in which the operation is exact.
    #[error("{op}: exactness envelope exceeded ({detail})")]
    EnvelopeExceeded { op: &'static str, detail: String },

    /// A step graphon does not exhibit the configuration an obstruction
    /// construction needs.
    #[error("missing structure: {0}")]
    MissingStructure(String),

    #[error("geometry: {0}")]
    Geometry(String),

    #[error("normalization gave up after {attempts} perturbation attempts: {reason}")]
    PerturbationBudgetExhausted { attempts: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}
