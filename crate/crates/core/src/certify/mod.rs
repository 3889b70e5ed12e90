//! Global stability: numeric conjecture, contraction objectives, and the
//! rigorous and semi-rigorous positivity provers.

pub mod driver;
pub mod objective;
pub mod replay;
pub mod rigorous;
pub mod semi;

pub use driver::{
    conjecture_global, prove_global_stability, CertVerdict, Certificate, GsOptions, ProofMode,
};
pub use objective::{build_objective, ContractionObjective};
pub use replay::replay;
pub use rigorous::{prove_positive_rigorous, Positivity, RigorousProof};
pub use semi::{prove_positive_semirigorous, SemiEvidence, SemiVerdict};
