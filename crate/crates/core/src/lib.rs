//! Complex division with three real multiplications.
//!
//! The crate provides the division and multiplication kernels, an explicit
//! small-matrix view of the factorized division, and a harness that checks
//! the kernels against exact rational arithmetic, counts their real
//! operations and measures their floating-point accuracy.
//!
//! Every kernel is generic over [`RealScalar`], so the same straight-line
//! code runs on `f64`, on [`ExactRational`] and on [`CountingScalar`].

pub mod analysis;
pub mod cli;
pub mod factorization;
pub mod kernels;
pub mod scalar;

pub use kernels::{ComplexValue, KernelError, PreparedDenominator};
pub use scalar::{CountingScalar, ExactRational, OpTally, RealScalar};
