use thiserror::Error;

use crate::fincat::{CategoryError, Report};
use crate::linalg::LinalgError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{what} fails its axioms:\n{report}")]
    AxiomFailure { what: String, report: Report },
    #[error("induced map is not well defined on the quotient: {0}")]
    WellDefinednessFailure(String),
    #[error("transformation is not natural:\n{0}")]
    NaturalityFailure(Report),
    #[error("object {0:?} has no declared dual")]
    MissingDual(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("normed spaces over different primes {0} and {1}")]
    PrimeMismatch(u64, u64),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn axioms(what: impl Into<String>, report: Report) -> Self {
        Error::AxiomFailure {
            what: what.into(),
            report,
        }
    }
}
