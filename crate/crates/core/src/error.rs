use thiserror::Error;

use crate::theory::TheoryError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("position out of range")]
    PositionOutOfRange,
    #[error("ill-sorted replacement")]
    IllSortedReplacement,
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("unknown constructor `{0}`")]
    UnknownConstructor(String),
    #[error("duplicate constructor `{0}`")]
    DuplicateConstructor(String),
    #[error("arity mismatch for `{ctor}`: expected {expected} argument(s), got {got}")]
    Arity {
        ctor: String,
        expected: usize,
        got: usize,
    },
    #[error("ill-sorted term: {0}")]
    IllSorted(String),
    #[error("size bound must be at least 1")]
    ZeroSize,
    #[error("term is not a {0} comb")]
    NotAComb(&'static str),
    #[error("unknown node id {0}")]
    UnknownNode(u32),
    #[error("no algebraic oracle for constructor `{0}`")]
    NoOracle(String),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error("internal error: {0}")]
    Internal(String),
}
