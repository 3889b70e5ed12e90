//! Difference equations, maps, orbits, random instances and periodicity.

pub mod orbit;
pub mod period;
pub mod random;
pub mod system;

pub use orbit::{Mode, Orbit};
pub use period::{detect_period_numeric, detect_period_symbolic};
pub use random::{random_equation, random_map, RandomSpec};
pub use system::{DifferenceEquation, System, Transformation};
