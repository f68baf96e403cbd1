//! Exact computations for the symmetric superpair (gl(p+q|r+s), θ):
//! restricted roots and multiplicities, Weyl vectors, the Harish-Chandra
//! c-function's zero structure, spherical highest weights and the δε-chain
//! reflection calculus behind self-duality.

pub mod algebra;
pub mod cfunction;
pub mod chains;
pub mod cli;
pub mod error;
pub mod pair;
pub mod roots;
pub mod sphericity;

pub use error::{Error, Result};
