//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the orbifold calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text does not parse as a multiplicity ("p", "p/q", or "inf").
    #[error("cannot parse {0:?} as a multiplicity")]
    ParseMultiplicity(String),

    /// A finite multiplicity below 1 was supplied.
    #[error("multiplicity {0} is below 1")]
    MultiplicityBelowOne(String),

    /// An operation defined only on integral-or-infinite multiplicities
    /// received a fractional one.
    #[error("operation needs integral-or-infinite multiplicities, got {0}")]
    NonIntegralMultiplicity(String),

    /// An aggregate (gcd, lcm) over an empty collection.
    #[error("empty input to {0}")]
    EmptyInput(&'static str),

    /// Two arguments live on different varieties.
    #[error("variety mismatch: expected {expected}, got {found}")]
    VarietyMismatch { expected: String, found: String },

    /// A prime-divisor label is not declared on the variety.
    #[error("unknown prime divisor {label:?} on variety {variety}")]
    UnknownPrime { variety: String, label: String },

    /// Degree computation on a variety without degree data.
    #[error("variety {0} carries no degree data")]
    MissingDegreeData(String),

    /// A finite multiplicity was required but an infinite one appeared.
    #[error("operation needs finite multiplicities, got infinity at {0:?}")]
    InfiniteMultiplicity(String),

    /// An operation restricted to genus-0 curves received another genus.
    #[error("operation needs genus 0, got genus {0}")]
    GenusNotZero(u32),

    /// A pullback coefficient that must be a positive integer is not.
    #[error("pullback coefficient {0} is not a positive integer")]
    NonIntegralCoefficient(String),

    /// A covering check needed orbifold multiplicities that were not given.
    #[error("missing orbifold multiplicities on the {0} side")]
    MissingMultiplicity(&'static str),

    /// Ramification orders over a point do not sum to the covering degree.
    #[error("ramification orders over {point:?} sum to {sum}, expected degree {degree}")]
    FiberSumMismatch {
        point: String,
        sum: u64,
        degree: u64,
    },

    /// Every fiber component over the given base prime is exceptional.
    #[error("every component over {0:?} is exceptional")]
    NoNonExceptionalComponent(String),

    /// Type enumeration requested beyond the guard dimension.
    #[error("dimension {0} is too large to enumerate")]
    DimensionTooLarge(u32),

    /// A tower of fibrations fails a consistency rule.
    #[error("inconsistent tower: {0}")]
    TowerInconsistency(String),

    /// A model or document violates a structural rule.
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// A workspace document fails to parse, resolve, or look up a name.
    #[error("document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
