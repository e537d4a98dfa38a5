//! Exact moments of Haar-unitary (CUE) and circular orthogonal ensemble (COE)
//! matrix entries via Weingarten calculus.

pub mod coe;
pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod identities;
mod memo;
pub mod sampling;
pub mod tables;
pub mod unitary;
pub mod value;
pub mod weingarten;

pub use error::{Error, Result};
pub use value::{Evaluation, Exact, Regime};
