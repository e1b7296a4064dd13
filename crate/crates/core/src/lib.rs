//! Construction and verification of complementary sequence families: Golay
//! pairs and sets, circulant Hadamard matrices, cross Z-complementary sets,
//! complete complementary codes and their zone-limited variants.
//!
//! Sequences are stored as `Z_q` phase exponents. Binary and quaternary
//! correlation sums are computed exactly over the Gaussian integers.

pub mod constructions;
pub mod corrcore;
pub mod error;
pub mod gbf;
pub mod gcp;
pub mod profile;
pub mod verify;

pub use error::{Error, Result};
