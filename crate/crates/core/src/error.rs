use thiserror::Error;

use crate::autom::Autom;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad classification of an [`Error`], used by the CLI to pick an exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input description itself is invalid.
    Config,
    /// The input is well formed but a mathematical precondition fails.
    Math,
    /// An exhaustive enumeration would exceed the configured cap.
    Bound,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("field of order {p}^{s} is too large (at most 2^16 elements supported)")]
    FieldTooLarge { p: u32, s: u32 },

    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    BadModulus(Vec<u32>),

    #[error("element index {index} is not in a field of order {order}")]
    ForeignElement { index: u32, order: u32 },

    #[error("zero has no inverse")]
    ZeroInverse,

    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,

    #[error("frobenius power t = {t} must satisfy 1 <= t <= s = {s} and divide s")]
    FrobeniusRange { t: u32, s: u32 },

    #[error("automorphism {0} is not defined on this coefficient ring")]
    UnsupportedAutom(Autom),

    #[error("duplicate root {root} in {which}")]
    DuplicateRoot { which: &'static str, root: u32 },

    #[error("polynomial {which} does not split into distinct linear factors over the base field")]
    NotSplit { which: &'static str },

    #[error("ring element has {got} coordinates, expected {expected}")]
    RingMismatch { expected: usize, got: usize },

    #[error("automorphism mismatch: {left} vs {right}")]
    AutomMismatch { left: Autom, right: Autom },

    #[error("leading coefficient of the divisor is not a unit")]
    NonUnitLeading,

    #[error("unit {0}")]
    BadUnit(String),

    #[error("component ({i},{j}): {reason}")]
    Component { i: usize, j: usize, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not applicable: {0}")]
    Inapplicable(String),

    #[error("enumeration of {what} needs {} words, cap is {cap}", fmt_count(*.needed))]
    OracleBound { what: String, needed: f64, cap: usize },
}

fn fmt_count(x: f64) -> String {
    if x < 1e15 {
        format!("{x:.0}")
    } else {
        format!("{x:.3e}")
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_)
            | Error::NotPrime(_)
            | Error::FieldTooLarge { .. }
            | Error::BadModulus(_)
            | Error::ForeignElement { .. }
            | Error::FrobeniusRange { .. }
            | Error::UnsupportedAutom(_)
            | Error::DuplicateRoot { .. }
            | Error::NotSplit { .. }
            | Error::RingMismatch { .. }
            | Error::AutomMismatch { .. } => ErrorKind::Config,
            Error::ZeroInverse
            | Error::ZeroPolynomial
            | Error::NonUnitLeading
            | Error::BadUnit(_)
            | Error::Component { .. }
            | Error::Precondition(_)
            | Error::Inapplicable(_) => ErrorKind::Math,
            Error::OracleBound { .. } => ErrorKind::Bound,
        }
    }
}
