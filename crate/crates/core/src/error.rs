use thiserror::Error;

use crate::forest::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos} of `{input}`: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("label {0} not found")]
    LabelNotFound(u32),
    #[error("`{forest}` is not in family {family}")]
    FamilyMismatch { family: Family, forest: String },
    #[error("arity {n} exceeds the cap {cap}")]
    ArityTooLarge { n: usize, cap: usize },
    #[error("`{0}` is not reduced")]
    NotReduced(String),
    #[error("unknown presentation `{0}`")]
    UnknownPresentation(String),
    #[error("invalid forest `{0}` survived cancellation")]
    UncancelledTerm(String),
    #[error("b-file: {0}")]
    BFile(String),
    #[error(transparent)]
    Series(#[from] hyperop_series::SeriesError),
}

pub type Result<T> = std::result::Result<T, Error>;
