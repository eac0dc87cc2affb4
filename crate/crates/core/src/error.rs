use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot combine coefficients from different backends ({0} and {1})")]
    MixedBackend(String, String),

    #[error("coefficient a({i},{j}) has degree {} beyond the log backend order {order}", i + j - 1)]
    OutOfTruncation { i: u32, j: u32, order: u32 },

    #[error("invalid Lazard index ({0},{1}); indices start at 1")]
    InvalidIndex(u32, u32),

    #[error("series variables differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("series substituted for `{0}` has a nonzero constant term")]
    NonzeroConstantTerm(String),

    #[error("no series assigned to variable `{0}`")]
    UnassignedVariable(String),

    #[error("series of order {order} cannot be evaluated with dimension bound {dim_bound}")]
    InsufficientOrder { order: u32, dim_bound: u32 },

    #[error("dimension bounds differ: {0} vs {1}")]
    DimBoundMismatch(u32, u32),

    #[error("series is not invertible under composition: {0}")]
    NotReversible(String),

    #[error("{0}")]
    InvalidConfiguration(String),

    #[error("{0}")]
    InvalidCycle(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
