//! Equilibria and local stability.

pub mod diagonal;
pub mod fixed_points;
pub mod stability;
pub mod univariate;

pub use diagonal::{diagonal_equilibria, DiagonalEquilibria, ExactWitness};
pub use fixed_points::{
    equation_fixed_points, fixed_points_numeric, positive_fixed_points, FixedPoint,
    FixedPointSearch,
};
pub use stability::{local_stability, StabilityReport, Verdict};
pub use univariate::UniPoly;
