use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (bad vertex index, self-loop, mismatched sizes).
    #[error("invalid input: {0}")]
    Input(String),

    /// A search or enumeration was asked to run beyond its configured size cap.
    #[error("capacity exceeded: {what} is {value}, limit is {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    /// The operation's mathematical precondition does not hold for this input.
    #[error("precondition not met: {0}")]
    Precondition(String),

    /// Numerical results contradict an invariant that must hold exactly.
    #[error("numerical consistency failure: {0}")]
    Consistency(String),

    /// The requested branch of a formula is not defined for this input.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
