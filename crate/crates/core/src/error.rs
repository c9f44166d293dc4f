use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed interval: lo {lo} > hi {hi}")]
    MalformedInterval { lo: Box<Rational>, hi: Box<Rational> },

    #[error("malformed rational {0:?}")]
    MalformedRational(String),

    #[error("interval [{lo}, {hi}) meets 0; split the set at 0 before dyadic projection")]
    MustSplitAtZero { lo: Box<Rational>, hi: Box<Rational> },

    #[error("degenerate slope between vertices {0} and {1}: equal abscissas")]
    DegenerateSlope(usize, usize),

    #[error("invalid polygonal: {0}")]
    InvalidPolygonal(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("invalid classification data, item ({item}): {reason}")]
    InvalidData { item: char, reason: String },

    #[error("not classifiable: {0}")]
    NotClassifiable(String),

    #[error("not a wavelet set: {0}")]
    NotAWaveletSet(String),

    #[error("invalid document: {0}")]
    InvalidDocument(String),

    #[error("unbounded search window: {0}")]
    Unbounded(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
