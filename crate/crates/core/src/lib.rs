//! Executable combinatorics for sparse multidimensional subshifts.
//!
//! The crate works with finite windows of configurations over pointed
//! alphabets. It decomposes patterns into `r`-blobs, builds and checks
//! blob-fractal hierarchies, generates the standard substitutive examples,
//! analyses one-dimensional path spaces, probes cellular automata and
//! topological full group elements, and runs the constructive lemmas about
//! the subshift generated by the primes.
//!
//! Everything infinite in the underlying theory is replaced by an explicit
//! finite horizon, and every verdict produced at a horizon is labelled as a
//! candidate or a bounded search result.

pub mod automata;
pub mod blobfractal;
pub mod error;
pub mod geometry;
pub mod pathcover;
pub mod paths;
pub mod patterns;
pub mod primes;
pub mod substitution;

pub use error::{Error, Result};

/// Default cap on the number of cells any generator may produce (2^26).
pub const DEFAULT_CELL_CAP: u128 = 1 << 26;
