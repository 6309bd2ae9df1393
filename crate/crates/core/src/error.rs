use thiserror::Error;

/// Errors raised by the field backends, the octonion machinery and the solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field spec `{spec}`: {reason}")]
    InvalidFieldSpec { spec: String, reason: String },

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("operation requires {0}")]
    WrongBackend(&'static str),

    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,

    #[error("polynomial is constant once its constant term is moved to the right-hand side")]
    ConstantPolynomial,

    #[error("root finder did not converge: {0}")]
    NoConvergence(String),

    #[error("field of size {size} exceeds the limit of {limit} for {what}")]
    FieldTooLarge { size: u64, limit: u64, what: &'static str },

    #[error("polynomial does not split: {0}")]
    NotSplit(String),

    #[error("matrix determinant is not 1")]
    DeterminantNotOne,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("solution count violates the expected bound: {0}")]
    BoundViolation(String),

    #[error("transporter construction failed: {0}")]
    Transporter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.into(),
            reason: reason.into(),
        }
    }
}
