use thiserror::Error;

use crate::lattice::LatticeError;

/// Errors raised by the structure-level operations of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),

    #[error("carrier must contain at least one point")]
    EmptyCarrier,

    #[error("carrier has {0} points; at most {max} are supported", max = crate::fuzzy::MAX_POINTS)]
    CarrierTooLarge(usize),

    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("no value given for point `{0}`")]
    NotTotal(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("map is not surjective: `{0}` has an empty fiber")]
    NotSurjective(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("size budget exceeded: {what} needs {required} but the budget is {budget}")]
    Budget {
        what: String,
        required: u128,
        budget: u128,
    },

    #[error("lattice `{0}` fails the beta-meet hypothesis beta(a/\\b) = beta(a) & beta(b)")]
    Uncertified(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
