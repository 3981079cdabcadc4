use thiserror::Error;

use crate::report::CheckReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed tables, maps or files: wrong dimensions, out-of-range entries.
    #[error("input error: {0}")]
    Input(String),

    /// Tables are well formed but violate the axioms they were supposed to satisfy.
    #[error("axiom violation in {context}: {}", first_violation(.report))]
    Rejected { context: String, report: CheckReport },

    /// The operation is deliberately restricted to a narrower class of inputs.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// A construction produced something outside the set it should land in.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("search budget of {limit} visits exceeded during {context}")]
    Budget { limit: u64, context: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

fn first_violation(report: &CheckReport) -> String {
    match report.violations.first() {
        Some(v) => format!("{} at {:?}", v.condition, v.witness),
        None => "none".to_string(),
    }
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
