use thiserror::Error;

use crate::bitstring::BitString;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible operands: lengths {left} and {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("family is not pairwise skewincident: {0} and {1} are not skewincident")]
    NotSkewincident(BitString, BitString),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no crossover found for n <= {max_n}")]
    NoCrossover { max_n: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

/// Fails with `InvalidArgument` unless `lo <= value <= hi`.
pub(crate) fn check_range(what: &str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::invalid(format!(
            "{what} = {value} is outside the supported range {lo}..={hi}"
        )));
    }
    Ok(())
}
