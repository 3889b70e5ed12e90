//! Exact polynomial and rational-function arithmetic.

pub mod interval;
pub mod monomial;
pub mod parse;
pub mod polynomial;
pub mod rational;
pub mod scalar;

pub use interval::Interval;
pub use monomial::Monomial;
pub use polynomial::{vars, Polynomial, Vars};
pub use rational::RationalFunction;
pub use scalar::{Ring, Scalar};
