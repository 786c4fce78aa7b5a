use thiserror::Error;

/// Errors raised by poset construction and the exact algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order relation contains a cycle through `{0}`")]
    Cycle(String),
    #[error("no element lies below every other element")]
    NoZero,
    #[error("element `{0}` is listed more than once")]
    DuplicateElement(String),
    #[error("cover relation mentions unknown element `{0}`")]
    UnknownElement(String),
    #[error("a poset needs at least one element")]
    EmptyPoset,
    #[error("{what} = {value} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("1 + v^T B^-1 u vanishes; the rank-one update is singular")]
    SingularUpdate,
    #[error("Redheffer matrix is singular (sum of mu(0,x) is 0)")]
    Singular,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, value: u64, cap: u64) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}
