use thiserror::Error;

use crate::graph::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {}", join_violations(.0))]
    InvalidGraph(Vec<Violation>),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("HD capacity formula applies to simple paths only")]
    NonSimplePath,
    #[error("no path")]
    NoPath,
    #[error("cycle budget exceeded after {0} iterations")]
    CycleBudgetExceeded(u64),
    #[error("graph is not terminal-augmented: {0}")]
    NotAugmented(String),
    #[error("no chords to select from")]
    EmptyChordList,
    #[error("resume precondition violated: {0}")]
    ResumePrecondition(String),
    #[error("not 3-CNF: {0}")]
    NotThreeCnf(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
