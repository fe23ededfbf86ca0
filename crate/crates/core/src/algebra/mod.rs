//! Scalars, polynomials and exact linear algebra.

pub mod linalg;
pub mod monomial;
pub mod polynomial;
pub mod rational;
pub mod slice;

pub use linalg::{determinant, inverse, kernel, rank, rref, solve, Rref, SparseEchelon, SparseRow};
pub use monomial::{monomials_of_degree, monomials_up_to_degree, Monomial};
pub use polynomial::{parse_polynomial, Polynomial};
pub use rational::{binomial, format_rational, parse_rational, rat, ratio, Rational};
pub use slice::DegreeSlice;
