//! Exact calculator for the K-theory of Bernoulli-shift crossed products
//! `A^{⊗Z} ⋊ G` by finite groups, together with the permutation-group,
//! character-table and graded-abelian-group machinery the closed formulas
//! are built from.
//!
//! Everything is integer-exact: no floating point appears anywhere in the
//! computation paths, and every evaluator is deterministic (identical inputs
//! produce identical reports, independent of thread count).

pub mod abgrp;
pub mod chartab;
pub mod error;
mod exec;
pub mod karoubi;
pub mod ktheory;
pub mod perm;
pub mod slnz;

pub use error::{Error, Result};
