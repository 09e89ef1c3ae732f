use thiserror::Error;

use crate::rational::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid map spec: {0}")]
    InvalidMapSpec(String),

    #[error("invalid piecewise-linear map: {0}")]
    InvalidMap(String),

    /// The map sends some breakpoint outside `[0, 1]`.
    #[error("[0,1] is not forward invariant: value {value} at breakpoint {at}")]
    NotForwardInvariant { at: Box<Rat>, value: Box<Rat> },

    #[error("{0} lies outside [0,1]")]
    Domain(Rat),

    #[error("invalid fiber model: {0}")]
    InvalidModel(String),

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("model is already algebraically stable")]
    AlreadyStable,

    #[error("inconclusive: strategy {strategy} exhausted its budget of {budget} rounds")]
    Inconclusive { strategy: String, budget: usize },

    #[error("invalid lift state: {0}")]
    InvalidLiftState(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
