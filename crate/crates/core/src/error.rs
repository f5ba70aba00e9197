use thiserror::Error;

use crate::invertibility::Verdict;

/// Errors produced by the numerical modules.
///
/// Numeric payloads are carried as `f64` so the error type does not depend on
/// the scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is off the unit circle: |z| = {modulus}")]
    OffUnitCircle { modulus: f64 },

    #[error("expected a causal element (offset >= 0), got offset {offset}")]
    NotCausal { offset: i64 },

    #[error("dimension {dim} is smaller than the support length {support}; the circulant would alias coefficients")]
    DimensionTooSmall { dim: usize, support: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the zero polynomial has no root classification")]
    ZeroPolynomial,

    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("transfer function is not causally invertible: verdict {verdict:?} ({inside} inside, {on_circle} on, {outside} outside the unit circle)")]
    NotInvertible {
        verdict: Verdict,
        inside: usize,
        on_circle: usize,
        outside: usize,
    },

    #[error("anticausal inversion needs every root strictly inside the unit circle ({inside} inside, {on_circle} on, {outside} outside)")]
    NotAnticausallyInvertible {
        inside: usize,
        on_circle: usize,
        outside: usize,
    },

    #[error("tail bound not certified within {max_len} coefficients: achieved {achieved:e}, requested {requested:e}")]
    TailNotCertified {
        max_len: usize,
        achieved: f64,
        requested: f64,
    },

    #[error("transfer function must satisfy a_0 = 1 with offset 0 (got a_0 = {a0}); divide by the leading coefficient and fold the scale into sigma")]
    NotNormalized { a0: String },

    #[error("transfer function must have real coefficients for process simulation")]
    NotReal,

    #[error("autocovariance sequence is not positive definite (pivot {index} = {pivot:e})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("malformed coefficient data: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
