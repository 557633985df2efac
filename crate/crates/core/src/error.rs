use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed instance, allocation or argument.
    #[error("invalid input: {0}")]
    Input(String),
    /// The instance is outside the preference class a solver needs.
    #[error("{solver}: instance not in the required class: {reason}")]
    Class { solver: &'static str, reason: String },
    /// A class for which no polynomial algorithm is known.
    #[error("unsupported class: {0}")]
    Unsupported(String),
    /// p-mean welfare undefined for the given utilities.
    #[error("domain error: {0}")]
    Domain(String),
    /// Brute force would enumerate more candidates than allowed.
    #[error("refusing to enumerate {required} allocations (limit {limit}); raise the limit with --po-limit")]
    EnumerationCap { required: u128, limit: u128 },
    /// A partial allocation handed to the search is not fair up to its round.
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid gadget parameter: {0}")]
    Parameter(String),
    /// Search ran out of its node budget before finishing.
    #[error("node budget of {budget} exhausted after {explored} nodes")]
    Budget { budget: u64, explored: u64 },
    /// A postcondition that should hold by construction failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub(crate) fn class(solver: &'static str, reason: impl Into<String>) -> Error {
    Error::Class { solver, reason: reason.into() }
}
