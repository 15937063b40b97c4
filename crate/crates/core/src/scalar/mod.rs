//! Real scalars the kernels are generic over.
//!
//! Three instantiations ship with the crate: `f64` for working-precision
//! arithmetic, [`ExactRational`] as the equivalence oracle and
//! [`CountingScalar`] for operation counts. Field axioms hold exactly only
//! for the rational instantiation.

mod counting;
mod rational;
mod ulp;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub use counting::{tally_merge, CountingScalar, OpTally};
pub use rational::ExactRational;
pub use ulp::{next_after, ulp_distance};

/// Field-like real scalar.
///
/// Kernels only use the arithmetic operators plus [`square`](Self::square),
/// so every operation they perform falls into one cost class.
pub trait RealScalar:
    Clone
    + Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i32(n: i32) -> Self;

    /// `v * v`, priced as a squaring rather than a multiplication.
    fn square(&self) -> Self;

    fn is_zero(&self) -> bool;

    /// Magnitude. Not an arithmetic cost class; only used for branch
    /// selection.
    fn abs(&self) -> Self;
}

impl RealScalar for f64 {
    #[inline]
    fn from_i32(n: i32) -> Self {
        f64::from(n)
    }

    #[inline]
    fn square(&self) -> Self {
        self * self
    }

    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    #[inline]
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

impl RealScalar for f32 {
    #[inline]
    fn from_i32(n: i32) -> Self {
        n as f32
    }

    #[inline]
    fn square(&self) -> Self {
        self * self
    }

    #[inline]
    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    #[inline]
    fn abs(&self) -> Self {
        f32::abs(*self)
    }
}

/// Free-function form of [`RealScalar::square`].
#[inline]
pub fn square<S: RealScalar>(v: &S) -> S {
    v.square()
}
