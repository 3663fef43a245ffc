use thiserror::Error;

/// Errors raised by the engine. Size guards carry the estimate that tripped
/// them so front ends can print it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("context mismatch: left is (n={left_n}, g={left_g}), right is (n={right_n}, g={right_g})")]
    ContextMismatch {
        left_n: usize,
        left_g: usize,
        right_n: usize,
        right_g: usize,
    },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("size guard exceeded: {what} (requested {requested}, limit {limit})")]
    GuardExceeded {
        what: String,
        requested: u128,
        limit: u128,
    },

    #[error("matrix is not in sp(V): {0}")]
    NotSymplecticAlgebra(String),

    #[error("symplectic form is invalid: {0}")]
    InvalidForm(String),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("polynomial is not symmetric in the Chern roots")]
    NotSymmetric,

    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit {
        Err(Error::GuardExceeded {
            what: what.to_string(),
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
