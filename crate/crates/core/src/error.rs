use thiserror::Error;

use crate::model::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(ValidationReport),

    #[error("choice sequence has length {found}, expected {expected}")]
    ChoiceLength { expected: usize, found: usize },

    #[error("label {label} at position {position} is outside 1..={bin_limit}")]
    LabelOutOfRange {
        position: usize,
        label: usize,
        bin_limit: usize,
    },

    #[error("state budget exhausted: more than {budget} DP states")]
    StateBudgetExhausted { budget: usize },

    #[error("enumeration budget exceeded: {bin_limit}^{items} sequences exceed {budget}")]
    EnumerationBudgetExceeded {
        bin_limit: usize,
        items: usize,
        budget: u64,
    },

    #[error("target open count {target} outside 1..={bin_limit}")]
    TargetOpenOutOfRange { target: usize, bin_limit: usize },

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("no valid shuffle found after {retries} retries")]
    RetriesExhausted { retries: usize },

    #[error("invalid batch spec: {0}")]
    InvalidBatchSpec(String),

    #[error("transition digraph needs at least one batch")]
    EmptyDigraph,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
