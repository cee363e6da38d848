//! Exact evaluation of hyperpfaffians and related invariants.
//!
//! All arithmetic is over exact rationals. The crate covers sparse tensors
//! and the `SL_n` action on them, the hyperpfaffian with an independent
//! full-expansion oracle, classical Pfaffian, permanent and determinant
//! evaluators, symbolic verification of the permanent/determinant projection
//! of the hyperpfaffian, brute-force invariant dimensions, and a small
//! arithmetic circuit IR.

pub mod circuit;
pub mod error;
pub mod invariants;
pub mod kernel;
pub mod linalg;
pub mod poly;
pub mod projection;
pub mod repcheck;
pub mod tensor;

pub use error::{Error, Result};
pub use kernel::Scalar;
