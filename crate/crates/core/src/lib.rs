//! Plane quartics with prescribed Galois action on their 28 bitangents,
//! built from Cayley octads.
//!
//! The pipeline takes a monic separable degree-8 polynomial `f`, shifts it to
//! trace zero, certifies that the eight points `(1 : x : x^2 : x^4)` over the
//! roots form a Cayley octad, writes down the net of quadrics through them and
//! expands the determinantal ternary quartic. Over finite fields the 28
//! bitangents are recovered from pairs of octad points and their Frobenius
//! orbits are compared with the two-set action of the root permutation.

pub mod bitangent;
pub mod cli;
pub mod elimination;
pub mod error;
pub mod factor;
pub mod field;
pub mod fixtures;
pub mod linalg;
pub mod octad;
pub mod parse;
pub mod perm;
pub mod poly;
pub mod quartic;
pub mod reduce;
pub mod twist;

pub use error::{Error, Result};
