use thiserror::Error;

use crate::solution::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid instance: {0}")]
    Validation(String),

    #[error("metric error: {0}")]
    Metric(String),

    #[error("incomplete directions cache: no path between {from} and {to}")]
    IncompleteCache { from: String, to: String },

    #[error("item {index} has size {size} which exceeds bin capacity {capacity}")]
    ItemTooLarge {
        index: usize,
        size: f64,
        capacity: f64,
    },

    #[error("{what} supports at most {max} items, got {got}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        max: usize,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("unknown site id {0}")]
    UnknownSite(usize),

    #[error("solution is infeasible ({} violations)", .0.len())]
    Infeasible(Vec<Violation>),
}

impl Error {
    /// True for errors caused by bad input data rather than solver failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Io(_)
                | Error::Parse(_)
                | Error::Validation(_)
                | Error::Metric(_)
                | Error::IncompleteCache { .. }
                | Error::UnknownSite(_)
                | Error::Infeasible(_)
        )
    }
}
