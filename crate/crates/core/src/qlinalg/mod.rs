//! Exact arithmetic kernel: rationals, first-order jets, dense matrices and
//! Gauss–Jordan based solvers, all generic over [`Scalar`].

mod elim;
mod jet;
mod mat;
mod rat;
mod scalar;

pub use elim::{inverse, nullspace_basis, rank, rref, solve, trace_word, Rref};
pub use jet::Jet;
pub use mat::Mat;
pub use rat::{ParseRatError, Rat};
pub use scalar::Scalar;
