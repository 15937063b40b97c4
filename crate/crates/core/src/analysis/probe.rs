use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::RealScalar;

/// Floating-point events seen while a kernel ran.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProbeLog {
    /// Some operation produced an infinity.
    pub infinite: bool,
    /// Some division used a zero or subnormal divisor.
    pub tiny_divisor: bool,
}

/// `f64` that reports infinities and tiny divisors to a caller-owned log.
#[derive(Clone, Copy)]
pub struct ProbeScalar<'p> {
    value: f64,
    log: Option<&'p Cell<ProbeLog>>,
}

impl<'p> ProbeScalar<'p> {
    pub fn new(value: f64, log: &'p Cell<ProbeLog>) -> Self {
        ProbeScalar {
            value,
            log: Some(log),
        }
    }

    pub fn value(self) -> f64 {
        self.value
    }

    fn emit(value: f64, log: Option<&'p Cell<ProbeLog>>) -> Self {
        if let Some(cell) = log {
            if value.is_infinite() {
                let mut l = cell.get();
                l.infinite = true;
                cell.set(l);
            }
        }
        ProbeScalar { value, log }
    }
}

impl fmt::Debug for ProbeScalar<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl PartialEq for ProbeScalar<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for ProbeScalar<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

macro_rules! probe_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for ProbeScalar<'_> {
            type Output = Self;
            fn $method(self, rhs: Self) -> Self {
                Self::emit(self.value $op rhs.value, self.log.or(rhs.log))
            }
        }
    };
}

probe_binop!(Add, add, +);
probe_binop!(Sub, sub, -);
probe_binop!(Mul, mul, *);

impl Div for ProbeScalar<'_> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let log = self.log.or(rhs.log);
        if let Some(cell) = log {
            if rhs.value.abs() < f64::MIN_POSITIVE {
                let mut l = cell.get();
                l.tiny_divisor = true;
                cell.set(l);
            }
        }
        Self::emit(self.value / rhs.value, log)
    }
}

impl Neg for ProbeScalar<'_> {
    type Output = Self;
    fn neg(self) -> Self {
        ProbeScalar {
            value: -self.value,
            log: self.log,
        }
    }
}

impl RealScalar for ProbeScalar<'_> {
    fn from_i32(n: i32) -> Self {
        ProbeScalar {
            value: f64::from(n),
            log: None,
        }
    }

    fn square(&self) -> Self {
        Self::emit(self.value * self.value, self.log)
    }

    fn is_zero(&self) -> bool {
        self.value == 0.0
    }

    fn abs(&self) -> Self {
        ProbeScalar {
            value: self.value.abs(),
            log: self.log,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{denom_norm, divide_naive, ComplexValue};

    #[test]
    fn records_overflowing_norm() {
        let log = Cell::new(ProbeLog::default());
        let p = |v| ProbeScalar::new(v, &log);
        let y = divide_naive(
            &ComplexValue::new(p(1.0), p(0.0)),
            &ComplexValue::new(p(1e200), p(1e200)),
        )
        .unwrap();
        assert_eq!(y.re.value(), 0.0);
        assert!(log.get().infinite);
        assert!(!log.get().tiny_divisor);
    }

    #[test]
    fn records_subnormal_divisor() {
        let log = Cell::new(ProbeLog::default());
        let p = |v| ProbeScalar::new(v, &log);
        let x = ComplexValue::new(p(1e-160), p(0.0));
        assert!(denom_norm(&x).value() > 0.0);
        divide_naive(&ComplexValue::new(p(1.0), p(0.0)), &x).unwrap();
        assert!(log.get().tiny_divisor);
    }

    #[test]
    fn value_transparent() {
        let log = Cell::new(ProbeLog::default());
        let p = |v| ProbeScalar::new(v, &log);
        let (a, b) = (0.1f64, 0.7f64);
        assert_eq!((p(a) * p(b) - p(a) / p(b)).value(), a * b - a / b);
        assert_eq!(log.get(), ProbeLog::default());
    }
}
