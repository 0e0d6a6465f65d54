use thiserror::Error;

use crate::judgment::Judgment;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} issues, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("judgments support at most {max} issues, got {actual}")]
    TooManyIssues { max: usize, actual: usize },

    #[error("invalid bitstring {text:?}: {reason}")]
    InvalidBitstring { text: String, reason: &'static str },

    #[error("agenda must contain at least one issue")]
    EmptyAgenda,

    #[error("duplicate issue label {0:?}")]
    DuplicateIssue(String),

    #[error("invalid issue label {0:?}")]
    InvalidIssueLabel(String),

    #[error("profile is empty")]
    EmptyProfile,

    #[error("judgment {0} is listed twice")]
    DuplicateJudgment(Judgment),

    #[error("domain is empty")]
    EmptyDomain,

    #[error("outcome is empty")]
    EmptyOutcome,

    #[error("judgment {0} is not in the domain")]
    NotInDomain(Judgment),

    #[error("agent {agent} out of range for a profile of {n} agents")]
    AgentOutOfRange { agent: usize, n: usize },

    #[error("removing the only agent would leave an empty profile")]
    WouldEmptyProfile,

    #[error("unknown variable {0:?}")]
    UnknownVariable(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("constraint is inconsistent: no judgment satisfies it")]
    InconsistentConstraint,

    #[error("enumeration over {m} issues exceeds the cap of {cap}")]
    CapacityExceeded { m: usize, cap: usize },

    #[error("search needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("table rule has no entry for profile support {0}")]
    MissingTableEntry(String),

    #[error("malformed clause: {0}")]
    MalformedClause(String),

    #[error("malformed CNF input: {0}")]
    Dimacs(String),

    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("invalid search parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed solver output: {0}")]
    SolverOutput(String),
}
