use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pair (action {action}, outcome {outcome}) is not in the ordering's partition")]
    UnknownPair { action: usize, outcome: usize },

    #[error("agent index {0} out of range")]
    AgentOutOfRange(usize),

    #[error("agent {agent}: {pairs} action-outcome pairs exceed the enumeration cap of {cap}")]
    CapExceeded {
        agent: usize,
        pairs: usize,
        cap: usize,
    },

    #[error("not a queueing environment: {0}")]
    NotQueueingEnvironment(String),

    #[error("not a voting environment: {0}")]
    NotVotingEnvironment(String),

    #[error("grid does not support the constructive witness: {0}")]
    GridDoesNotSupportWitness(String),

    #[error("agent mismatch: {0}")]
    AgentMismatch(String),

    #[error("ordering is not strict")]
    NotStrict,

    #[error("actions must be distinct")]
    ActionsEqual,

    #[error("{location}: {message}")]
    InvariantViolation { location: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invariant(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvariantViolation {
            location: location.into(),
            message: message.into(),
        }
    }
}
