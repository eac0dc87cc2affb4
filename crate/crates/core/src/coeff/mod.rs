//! Graded polynomial rings with exact rational coefficients.
//!
//! Three generator families live here: the free Lazard symbols `A(i,j)`
//! (degree `i+j-1`), the logarithm coefficients `m(i)` (degree `i`) and the
//! multiplicative parameter `b` (degree 1). A [`CoefficientBackend`] decides
//! which family supplies the coefficients `a(i,j)` of a formal group law.

mod backend;
mod generator;
mod polynomial;
mod text;

pub use backend::CoefficientBackend;
pub use generator::{Family, Generator, Monomial};
pub use polynomial::GradedPolynomial;
