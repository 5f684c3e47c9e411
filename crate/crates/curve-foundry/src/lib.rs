//! Pairing-friendly elliptic curve parameter foundry.
//!
//! Families of (q, r, t) polynomials, the classic constructions that produce
//! them, sparse-seed instantiation with end-to-end verification, desk-scale
//! pairing checks and L-notation security estimates.

pub mod catalog;
pub mod constructors;
pub mod error;
pub mod instantiate;
mod fpoly;
pub mod mathcore;
pub mod polyring;
pub mod security;
pub mod toyverify;
pub(crate) mod serde_big;

pub use error::{Error, Result};
pub use polyring::{Rat, RatPoly};
