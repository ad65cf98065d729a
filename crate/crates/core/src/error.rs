use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on a real parameter failed. `what` reads as a sentence
    /// fragment such as "mu must exceed -1".
    #[error("{what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("gamma function has a pole at {0}")]
    Pole(f64),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure(cond: bool, what: &'static str, value: f64) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain { what, value })
    }
}
