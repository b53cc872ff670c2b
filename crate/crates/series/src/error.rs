use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("linear term is not an invertible constant")]
    NonUnitLinearTerm,
    #[error("unknown series `{0}`")]
    UnknownSeries(String),
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
}
