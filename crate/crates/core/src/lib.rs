//! Finitary codes for points of `R^N`, `2^N`, `(2^N)^N` and `(R^N)^N`,
//! decision procedures for the relations `F = (=R)+`, `G = (=2N)+` and `E`
//! on the carving space `P`, the explicit reductions between them, and a
//! seedable harness that checks every one of them on generated codes.

pub mod codes;
pub mod error;
pub mod gen;
pub mod harness;
pub mod invariants;
pub mod reductions;
pub mod relations;

pub use error::{Error, Result};
