//! Exact computer algebra for spin structures realised inside Clifford-like
//! algebras.
//!
//! The crate builds, over the rationals:
//!
//! * the free tensor algebra `T(V)` of a metric space ([`freealg`]),
//! * the universal enveloping algebra `U(so(3))` with its multipole tensors
//!   and monopole projection ([`uea`]),
//! * truncated quotients of `T(V)` by two-sided ideals: strong Clifford,
//!   spinless weak Clifford, spin-`s` weak Clifford and symmetric algebras
//!   ([`quotient`]),
//! * the endomorphism calculus of conformal reflections and the metric on
//!   antisymmetric tensors ([`geometry`]),
//!
//! plus a floating-point spin-matrix oracle ([`rep`]), an expression
//! language ([`expr`]) and the check suites behind the `verify` command
//! ([`verify`]).
//!
//! ```
//! use weakcliff::quotient::{QuotientContext, RelationFamily};
//! use weakcliff::freealg::MetricSpace;
//! use weakcliff::expr::parse_element;
//!
//! let space = MetricSpace::euclidean(3);
//! let ctx = QuotientContext::build(&space, RelationFamily::clifford(&space), 3, 2);
//! assert_eq!(ctx.dims(), &[1, 4, 7, 8]);
//! let x = parse_element("e2*e1 + e1*e2", 3).unwrap();
//! assert_eq!(ctx.reduce(&x).unwrap().to_string(), "0");
//! ```

pub mod expr;
pub mod freealg;
pub mod geometry;
pub mod quotient;
pub mod rep;
pub mod scalar;
pub mod uea;
pub mod verify;

pub use freealg::{Element, MetricSpace, Word};
pub use scalar::{CasimirPoly, HalfInteger, Poly, Rational};
pub use uea::PbwElement;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid spin `{0}`: expected a non-negative half-integer")]
    InvalidSpin(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("degree error: {0}")]
    Degree(String),
    #[error("slots ({m}, {n}) out of range for degree {degree}")]
    SlotOutOfRange { m: usize, n: usize, degree: usize },
    #[error("degree {degree} exceeds the truncation degree {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("subspace is not stable under the operator")]
    NotStable,
    #[error("vector is null (g(a,a) = 0)")]
    NullVector,
    #[error("vector is not null")]
    NotNull,
    #[error("vector is zero")]
    ZeroVector,
    #[error("metric admits no null vectors")]
    Definite,
    #[error("spin 0 has no multipole ideal in the weak algebra; use the symmetric relations")]
    SpinZero,
    #[error("element is not an antisymmetric tensor: {0}")]
    NotAntisymmetric(String),
    #[error("element is not invariant: {0}")]
    NotInvariant(String),
    #[error("{0}")]
    Unsupported(String),
}

/// The guide's code blocks, compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/tensors.md")]
    mod tensors {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/enveloping.md")]
    mod enveloping {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/metric.md")]
    mod metric {}
    #[doc = include_str!("../../../book/src/spin.md")]
    mod spin {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
