use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A numeric argument is outside the operation's domain.
    #[error("{name} {requirement}")]
    InvalidParameter {
        name: &'static str,
        requirement: String,
    },

    #[error("coefficient vectors differ in length (z: {z_len}, zbar: {zbar_len})")]
    LengthMismatch { z_len: usize, zbar_len: usize },

    #[error("non-finite coefficient in {0}")]
    NonFinite(&'static str),

    #[error("no sign change bracketing the root on ({lo}, {hi})")]
    NoBracket { lo: f64, hi: f64 },

    #[error("expected exactly one critical point of phi_{p} on (0, 1), found {sign_changes} sign changes")]
    NonuniqueCriticalPoint { p: u32, sign_changes: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, requirement: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            requirement: requirement.into(),
        }
    }
}
