//! Exact-arithmetic toolkit for the symplectic Lie algebra sp(4) over ℚ.
//!
//! The crate builds sp(4) concretely, computes conjugacy invariants of its
//! solvable subalgebras, identifies their isomorphism classes, and certifies a
//! built-in catalog of conjugacy classes of solvable subalgebras.

// Index loops are the clearest notation for the small dense matrix kernels.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod jordan;
pub mod lie;
pub mod sp4;
