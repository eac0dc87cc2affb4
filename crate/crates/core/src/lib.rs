//! Exact calculus of formal group laws and the divisor-class formulas of
//! algebraic cobordism.
//!
//! The crate is organised bottom-up:
//!
//! * [`coeff`]: graded polynomial rings over the rationals that model the
//!   Lazard coefficient ring (free symbols, logarithm parametrisation, and the
//!   additive/multiplicative laws).
//! * [`series`] and [`fgl`]: truncated multivariate power series and the
//!   formal group law operations built on them (formal sum, inverse,
//!   n-series, multi-linear combinations, support decomposition).
//! * [`chern`]: the nilpotent algebra of first Chern class operators.
//! * [`snc`]: combinatorial strict normal crossing configurations, divisor
//!   classes, products of divisor classes and the section-axiom normal form.
//! * [`cycles`]: free graded groups of (decorated) cobordism cycles and the
//!   relation generators.
//!
//! All arithmetic is exact. Values are immutable once built and every
//! operation is a pure function.

pub mod chern;
pub mod coeff;
pub mod cycles;
mod degree;
mod error;
pub mod fgl;
pub mod series;
pub mod snc;
mod subset;

pub use degree::GradedDegree;
pub use error::{Error, Result};
pub use subset::Subset;

/// Exact rational scalar used for every coefficient.
pub type Rational = num_rational::BigRational;
