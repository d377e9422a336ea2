use thiserror::Error;

use crate::signature::{GeometryClass, TriangleSignature};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rotation order {0} is invalid: every entry of (p, q, r) must be an integer >= 2")]
    InvalidOrder(u64),

    #[error("could not parse rotation order {0:?}")]
    UnparsableOrder(String),

    #[error("signature contains an infinite order; the non-co-compact group Γ(2,2,∞) is not supported")]
    NonCoCompact,

    #[error("{sig} is {found}, expected a {expected} signature")]
    WrongGeometry {
        sig: TriangleSignature,
        found: GeometryClass,
        expected: GeometryClass,
    },

    #[error("divisor counts are undefined for N = 0")]
    ZeroArgument,

    #[error("modulus {modulus} and residue {residue} are incompatible (need 0 <= residue < modulus)")]
    BadResidue { residue: u64, modulus: u64 },

    #[error("quadratic form ({a}, {b}, {c}) is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },

    #[error("character sum for {sig} at degree {degree} is {value}, not within 1e-6 of an integer")]
    NonIntegralTrace {
        sig: TriangleSignature,
        degree: u64,
        value: f64,
    },

    #[error("torus multiplicity {torus} at λ = {lambda} is not divisible by the quotient order {quotient}")]
    InexactQuotient { lambda: u64, torus: u64, quotient: u64 },

    #[error("rotation group closure for {sig} exceeded {limit} elements")]
    ClosureOverflow { sig: TriangleSignature, limit: usize },

    #[error("generated group for {sig} has {found} elements, expected {expected}")]
    GroupOrderMismatch {
        sig: TriangleSignature,
        found: usize,
        expected: u64,
    },

    #[error("relation {name} fails: residual {residual:e}")]
    RelationFailed { name: String, residual: f64 },

    #[error("power {power} of the dual rotation map fixes a nonzero lattice vector")]
    FixedPoint { power: u32 },

    #[error("order m = {order} is out of range for degree l = {degree}")]
    OrderOutOfRange { degree: u64, order: i64 },

    #[error("degree l = {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: u64, max: u64 },

    #[error("{samples} samples are too few for degree {degree} (need at least {needed})")]
    TooFewSamples {
        degree: u64,
        samples: usize,
        needed: usize,
    },

    #[error("λ = {0} is not an eigenvalue of the torus")]
    NotRepresentable(u64),

    #[error("numerical rank is inconclusive: gap ratio {gap:e} below 1e3")]
    InconclusiveRank { gap: f64 },
}
