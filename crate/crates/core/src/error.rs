use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{0} has no finite L1 norm")]
    NonIntegrable(&'static str),
    #[error("{0} has no support truncation")]
    TruncationUnavailable(&'static str),
    #[error("{0} cannot represent its dilation")]
    NotDilatable(&'static str),
    #[error("graphex is trivial: I + |S|_1 + |W|_1 = 0")]
    TrivialGraphex,
    #[error("restriction size {r} is outside [0, {size}]")]
    OutOfRange { r: f64, size: f64 },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("label {label} is outside [0, {size}]")]
    LabelOutOfRange { label: f64, size: f64 },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(f64, f64),
    #[error("expected {expected:.3e} latent points, above the limit of {limit:.3e}")]
    LatentBudgetExceeded { expected: f64, limit: f64 },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
