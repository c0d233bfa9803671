//! Exact computations for Bridgeland stability on the two degree-8 del Pezzo
//! surfaces `P1×P1` and the blow-up of `P2` at a point.

pub mod charge;
pub mod error;
pub mod fixtures;
pub mod helix;
pub mod lattice;
pub mod linalg;
pub mod notation;
pub mod regions;
pub mod symkernel;
pub mod walls;

pub use error::{Error, Result};
