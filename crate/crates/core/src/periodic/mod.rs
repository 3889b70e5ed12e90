//! Convergence to periodic solutions: cycle forms, residual norms,
//! smoothed objectives and their certification.

pub mod conj1;
pub mod cycle;
pub mod factored;
pub mod manifold;
pub mod multistart;
pub mod norm;

pub use conj1::{prove_conjecture1_rigorous, Conjecture1Proof};
pub use cycle::{extract_limit_cycle, LimitCycle};
pub use manifold::{manifold, PeriodicManifold};
pub use multistart::{multistart_certify, MultistartReport};
pub use norm::{build_smoothed_objective, residual_norm, ResidualKind, ResidualNorm, SmoothedObjective};
