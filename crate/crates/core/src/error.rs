use thiserror::Error;

use crate::relations::ClauseViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} must be nonempty")]
    Empty(&'static str),

    #[error("zero denominator")]
    ZeroDenominator,

    /// A periodic word was compared against a pullback sequence and no
    /// disagreement was found below the search bound.
    #[error("cannot decide equality of {left} and {right} (no disagreement below {bound})")]
    IncomparableCodes {
        left: String,
        right: String,
        bound: u64,
    },

    #[error("clause ({}) of P violated: {0}", .0.clause())]
    Clause(ClauseViolation),

    #[error("structural mismatch: {0}")]
    StructuralMismatch(String),

    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("no witness index for basepoint entry {k}")]
    NoWitness { k: usize },

    #[error("type mismatch: expected `{expected}`, found `{found}`")]
    TypeMismatch { expected: String, found: String },

    #[error("enumeration needs {needed} steps, cap is {cap}")]
    ResourceLimit { needed: u64, cap: u64 },

    #[error("configuration error: {0}")]
    Config(String),
}
