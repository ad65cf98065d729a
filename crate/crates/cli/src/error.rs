use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// Process exit status for this error. Everything here is bad input or
    /// an unusable environment; tolerance breaches are not errors.
    pub fn exit_code(&self) -> i32 {
        1
    }
}
