//! Exact-rational convex polytopes, valuations on them, and randomized
//! verifiers for their transformation laws and classification formulas.
//!
//! Everything is generic over an exact ordered field ([`scalar::Scalar`]);
//! the aliases below fix it to arbitrary-precision rationals.

pub mod classify;
pub mod error;
pub mod expr;
pub mod functionals;
pub mod geometry;
pub mod harness;
pub mod json;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
pub type Polytope = geometry::Polytope<Rational>;
pub type Halfspace = geometry::Halfspace<Rational>;
pub type Simplex = geometry::Simplex<Rational>;
pub type Vector = linalg::Vector<Rational>;
pub type Matrix = linalg::Matrix<Rational>;
pub type LinearMap = linalg::LinearMap<Rational>;
pub type Value = functionals::Value<Rational>;
pub type ValuationHandle = functionals::ValuationHandle<Rational>;
pub type CheckReport = harness::CheckReport<Rational>;
pub type FitResult = classify::FitResult<Rational>;
