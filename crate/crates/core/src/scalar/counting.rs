use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use super::RealScalar;

/// Real operation counts by cost class. Subtractions are counted as
/// additions; negations get their own field and do not take part in cost
/// comparisons.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpTally {
    pub mul: u64,
    pub add: u64,
    pub square: u64,
    pub div: u64,
    pub neg: u64,
}

impl OpTally {
    pub const ZERO: OpTally = OpTally {
        mul: 0,
        add: 0,
        square: 0,
        div: 0,
        neg: 0,
    };

    pub const fn new(mul: u64, add: u64, square: u64, div: u64) -> Self {
        OpTally {
            mul,
            add,
            square,
            div,
            neg: 0,
        }
    }

    /// Componentwise sum.
    pub fn merge(self, other: OpTally) -> OpTally {
        OpTally {
            mul: self.mul + other.mul,
            add: self.add + other.add,
            square: self.square + other.square,
            div: self.div + other.div,
            neg: self.neg + other.neg,
        }
    }

    /// Equality on the priced classes {mul, add, square, div}.
    pub fn same_cost(&self, other: &OpTally) -> bool {
        self.mul == other.mul
            && self.add == other.add
            && self.square == other.square
            && self.div == other.div
    }
}

impl AddAssign for OpTally {
    fn add_assign(&mut self, rhs: OpTally) {
        *self = self.merge(rhs);
    }
}

impl fmt::Display for OpTally {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mul={} add={} square={} div={} neg={}",
            self.mul, self.add, self.square, self.div, self.neg
        )
    }
}

/// Free-function form of [`OpTally::merge`].
pub fn tally_merge(a: OpTally, b: OpTally) -> OpTally {
    a.merge(b)
}

/// A scalar that forwards every operation to `S` and records its cost class
/// in a caller-owned tally.
///
/// Constants built with [`RealScalar::from_i32`] carry no tally; a binary
/// operation records into whichever operand has one. Use one tally per
/// in-flight kernel call and merge afterwards.
#[derive(Clone)]
pub struct CountingScalar<'t, S> {
    value: S,
    tally: Option<&'t Cell<OpTally>>,
}

impl<'t, S: RealScalar> CountingScalar<'t, S> {
    pub fn new(value: S, tally: &'t Cell<OpTally>) -> Self {
        CountingScalar {
            value,
            tally: Some(tally),
        }
    }

    pub fn value(&self) -> &S {
        &self.value
    }

    pub fn into_value(self) -> S {
        self.value
    }

    fn record(tally: Option<&Cell<OpTally>>, bump: impl FnOnce(&mut OpTally)) {
        if let Some(cell) = tally {
            let mut t = cell.get();
            bump(&mut t);
            cell.set(t);
        }
    }

    fn binary(
        self,
        rhs: Self,
        bump: impl FnOnce(&mut OpTally),
        op: impl FnOnce(S, S) -> S,
    ) -> Self {
        let tally = self.tally.or(rhs.tally);
        Self::record(tally, bump);
        CountingScalar {
            value: op(self.value, rhs.value),
            tally,
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for CountingScalar<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl<S: PartialEq> PartialEq for CountingScalar<'_, S> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<S: PartialOrd> PartialOrd for CountingScalar<'_, S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl<S: RealScalar> Add for CountingScalar<'_, S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.binary(rhs, |t| t.add += 1, |a, b| a + b)
    }
}

impl<S: RealScalar> Sub for CountingScalar<'_, S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.binary(rhs, |t| t.add += 1, |a, b| a - b)
    }
}

impl<S: RealScalar> Mul for CountingScalar<'_, S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.binary(rhs, |t| t.mul += 1, |a, b| a * b)
    }
}

impl<S: RealScalar> Div for CountingScalar<'_, S> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.binary(rhs, |t| t.div += 1, |a, b| a / b)
    }
}

impl<S: RealScalar> Neg for CountingScalar<'_, S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::record(self.tally, |t| t.neg += 1);
        CountingScalar {
            value: -self.value,
            tally: self.tally,
        }
    }
}

impl<S: RealScalar> RealScalar for CountingScalar<'_, S> {
    fn from_i32(n: i32) -> Self {
        CountingScalar {
            value: S::from_i32(n),
            tally: None,
        }
    }

    fn square(&self) -> Self {
        Self::record(self.tally, |t| t.square += 1);
        CountingScalar {
            value: self.value.square(),
            tally: self.tally,
        }
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn abs(&self) -> Self {
        CountingScalar {
            value: self.value.abs(),
            tally: self.tally,
        }
    }
}
