use thiserror::Error;

use crate::laurent::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(Var, Var),

    #[error("not divisible: nonzero remainder dividing {num} by {den}")]
    NotDivisible { num: String, den: String },

    #[error("parity violation: exponent {exponent} times {multiplier} is not an integer")]
    ParityViolation { exponent: i64, multiplier: String },

    #[error("undefined degree of the zero polynomial")]
    UndefinedDegree,

    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("resource cap: {strands} strands requested (basis size C_{strands} = {catalan}), cap is {cap}")]
    Resource {
        strands: usize,
        cap: usize,
        catalan: String,
    },

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
