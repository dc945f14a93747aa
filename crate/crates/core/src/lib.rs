//! Covering codes and saturating sets in projective spaces over finite fields.

pub mod error;
pub mod gf;
pub mod pg;
pub mod codes;
pub mod bounds;
pub mod construct;
pub mod lift;

pub use error::{Error, Result};
