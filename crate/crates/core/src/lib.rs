//! Rational invariants of configurations of linear subspaces.
//!
//! A configuration is an `s`-tuple of `d`-planes in an `n`-dimensional space,
//! acted on diagonally by `GL_n`. For `n = r·d` and for `n = (2r+1)e, d = 2e`
//! the invariant field is generated by traces of words in a finite set of
//! square "letter" matrices computed from the configuration by exact
//! normal-form pipelines. This crate computes those letters and traces over
//! exact rationals, and over first-order jets to obtain exact Jacobian ranks.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod divisible;
pub mod error;
pub mod grassmann;
pub mod odd;
pub mod orbit;
pub mod qlinalg;

pub use error::{Error, Result};

pub use qlinalg::{Jet, Mat, Rat, Scalar};
pub use grassmann::{CaseTag, Config, Subspace};
pub use orbit::{InvariantVector, Verdict};
