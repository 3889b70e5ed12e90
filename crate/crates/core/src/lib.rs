pub mod certify;
pub mod cli;
pub mod dynsys;
pub mod equilibria;
pub mod invariants;
pub mod error;
pub mod linalg;
pub mod optimize;
pub mod periodic;
pub mod poly;
pub mod serde_poly;
pub mod serde_scalar;

pub use error::{Error, Result};
