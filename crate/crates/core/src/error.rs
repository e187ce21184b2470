use thiserror::Error;

use crate::word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("q must be a power of two and at least 2, got {0}")]
    InvalidQ(usize),
    #[error("word {0} is not a member of W_{1}")]
    InvalidWord(Word, usize),
    #[error("letters do not alternate between a-type and b-type at position {0}")]
    NotAlternating(usize),
    #[error("operator {op} is undefined on {word} for q = {q}")]
    OperatorUndefined { op: &'static str, word: Word, q: usize },
    #[error("operator {op} is ambiguous on {word} for q = {q}: both candidates lie in W_q")]
    AmbiguousOperator { op: &'static str, word: Word, q: usize },
    #[error("generator matrices violate the group relations: {0}")]
    InvalidRep(String),
    #[error("invalid band data: {0}")]
    InvalidBand(String),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("induction is only supported from the Klein subgroups")]
    UnsupportedSubgroup,
    #[error("modules are defined for different groups (q = {0} vs q = {1})")]
    QMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("module is not signature eligible: {0}")]
    NotSignatureEligible(String),
    #[error("indecomposability certification failed: {0}")]
    CertificationFailed(String),
    #[error("coordinate ({0}, {1}) is unreachable")]
    Unreachable(i64, i64),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
