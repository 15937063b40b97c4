use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::RealScalar;

/// Arbitrary-precision rational kept in canonical form: positive
/// denominator, numerator and denominator coprime.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        Self(BigRational::new(num, den))
    }

    /// Exact value of a finite float; `None` for NaN and infinities.
    pub fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Self)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Nearest `f64`, ties to even. Values beyond the finite range round to
    /// a signed infinity, which callers treat as the overflow flag.
    pub fn round_to_f64(&self) -> f64 {
        let num = self.0.numer();
        if num.is_zero() {
            return 0.0;
        }
        let negative = num.sign() == Sign::Minus;
        let n = num.magnitude();
        let d = self.0.denom().magnitude();

        // n/d lies in [2^(e-1), 2^(e+1)); scale so the integer quotient
        // carries 55 or 56 significant bits, leaving round and sticky room.
        let e = n.bits() as i64 - d.bits() as i64;
        let shift = 55 - e;
        let (q, r) = if shift >= 0 {
            (n << shift as u64).div_rem(d)
        } else {
            n.div_rem(&(d << (-shift) as u64))
        };
        let sticky = !r.is_zero();
        let q = q.to_u64().expect("scaled quotient fits in 56 bits");
        let q_bits = 64 - i64::from(q.leading_zeros());
        let exp = q_bits - 1 - shift;

        let magnitude = if exp > 1023 {
            f64::INFINITY
        } else {
            let precision = if exp >= -1022 { 53 } else { 1075 + exp };
            let drop = q_bits - precision;
            let mantissa = if drop >= 64 {
                0
            } else {
                let kept = q >> drop;
                let rem = q & ((1u64 << drop) - 1);
                let half = 1u64 << (drop - 1);
                if rem > half || (rem == half && (sticky || kept & 1 == 1)) {
                    kept + 1
                } else {
                    kept
                }
            };
            mul_pow2(mantissa as f64, (drop - shift) as i32)
        };
        if negative {
            -magnitude
        } else {
            magnitude
        }
    }
}

/// `x * 2^k`, exact whenever the result is representable.
fn mul_pow2(mut x: f64, mut k: i32) -> f64 {
    let pow2 = |k: i32| f64::from_bits(((k + 1023) as u64) << 52);
    while k > 1000 {
        x *= pow2(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= pow2(-1000);
        k += 1000;
    }
    x * pow2(k)
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Add for ExactRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Sub for ExactRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for ExactRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

/// Panics on a zero divisor; kernels check divisors before dividing.
impl Div for ExactRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self(self.0 / rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl RealScalar for ExactRational {
    fn from_i32(n: i32) -> Self {
        Self::from_integer(i64::from(n))
    }

    fn square(&self) -> Self {
        Self(&self.0 * &self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn abs(&self) -> Self {
        Self(self.0.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::from_ratio(n, d)
    }

    fn assert_canonical(v: &ExactRational) {
        assert!(
            v.denom() > &BigInt::from(0),
            "{v} has non-positive denominator"
        );
        assert_eq!(v.numer().gcd(v.denom()), BigInt::from(1), "{v} not reduced");
    }

    /// `v == n/d` checked by cross multiplication only.
    fn equals_fraction(v: &ExactRational, n: i64, d: i64) -> bool {
        v.numer() * BigInt::from(d) == BigInt::from(n) * v.denom()
    }

    #[test]
    fn arithmetic_on_small_rationals_is_canonical_and_exact() {
        let range = -20i64..=20;
        let vals: Vec<(i64, i64)> = range
            .clone()
            .flat_map(|n| range.clone().filter(|d| *d != 0).map(move |d| (n, d)))
            .step_by(7)
            .collect();
        for &(n1, d1) in &vals {
            for &(n2, d2) in &vals {
                let (a, b) = (r(n1, d1), r(n2, d2));
                let sum = a.clone() + b.clone();
                let diff = a.clone() - b.clone();
                let prod = a.clone() * b.clone();
                for v in [&sum, &diff, &prod] {
                    assert_canonical(v);
                }
                assert!(equals_fraction(&sum, n1 * d2 + n2 * d1, d1 * d2));
                assert!(equals_fraction(&diff, n1 * d2 - n2 * d1, d1 * d2));
                assert!(equals_fraction(&prod, n1 * n2, d1 * d2));
                if n2 != 0 {
                    let quot = a.clone() / b.clone();
                    assert_canonical(&quot);
                    assert!(equals_fraction(&quot, n1 * d2, d1 * n2));
                }
                let neg = -a.clone();
                assert_canonical(&neg);
                assert!(equals_fraction(&neg, -n1, d1));
            }
        }
    }

    #[test]
    fn exact_float_import() {
        assert_eq!(ExactRational::from_f64(0.5), Some(r(1, 2)));
        assert_eq!(ExactRational::from_f64(-3.0), Some(r(-3, 1)));
        assert_eq!(ExactRational::from_f64(f64::NAN), None);
        assert_eq!(ExactRational::from_f64(f64::INFINITY), None);
        let tiny = ExactRational::from_f64(f64::from_bits(1)).unwrap();
        assert_eq!(tiny.denom(), &(BigInt::from(1) << 1074u32));
    }

    // Independent rounding oracle: binary search over positive bit patterns
    // comparing exact values, then pick the nearer neighbour (ties to even).
    fn rounding_oracle(v: &ExactRational) -> f64 {
        if v.is_zero() {
            return 0.0;
        }
        let mag = v.abs();
        let exact = |bits: u64| ExactRational::from_f64(f64::from_bits(bits)).unwrap();
        let max_bits = f64::MAX.to_bits();
        if mag > exact(max_bits) {
            // Overflow threshold is MAX + ulp/2 = 2^1024 - 2^970, ties to
            // even rounds up to infinity.
            let threshold = ExactRational::from_bigints(
                (BigInt::from(1) << 1024u32) - (BigInt::from(1) << 970u32),
                BigInt::from(1),
            );
            let out = if mag >= threshold {
                f64::INFINITY
            } else {
                f64::MAX
            };
            return if v.is_negative() { -out } else { out };
        }
        // largest bits with exact(bits) <= mag
        let (mut lo, mut hi) = (0u64, max_bits);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if exact(mid) <= mag {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let below = exact(lo);
        let chosen = if below == mag {
            lo
        } else {
            let above = exact(lo + 1);
            let d_lo = mag.clone() - below;
            let d_hi = above - mag.clone();
            match d_lo.cmp(&d_hi) {
                std::cmp::Ordering::Less => lo,
                std::cmp::Ordering::Greater => lo + 1,
                std::cmp::Ordering::Equal => {
                    if lo & 1 == 0 {
                        lo
                    } else {
                        lo + 1
                    }
                }
            }
        };
        let out = f64::from_bits(chosen);
        if v.is_negative() {
            -out
        } else {
            out
        }
    }

    #[test]
    fn round_examples() {
        assert_eq!(r(1, 2).round_to_f64(), 0.5);
        assert_eq!(r(0, 7).round_to_f64(), 0.0);
        let eleven_fifths = r(11, 5);
        assert_eq!(
            eleven_fifths.round_to_f64(),
            rounding_oracle(&eleven_fifths)
        );
        assert_eq!(eleven_fifths.round_to_f64(), 2.2);
        assert_eq!(r(1, 3).round_to_f64(), 1.0 / 3.0);
        assert_eq!(r(-2, 5).round_to_f64(), -0.4);
    }

    #[test]
    fn round_ties_go_to_even() {
        let one = ExactRational::from_f64(1.0).unwrap();
        let half_ulp = ExactRational::from_f64(f64::EPSILON / 2.0).unwrap();
        // exactly between 1 and 1+eps: even mantissa is 1.0
        assert_eq!((one.clone() + half_ulp.clone()).round_to_f64(), 1.0);
        let odd = ExactRational::from_f64(1.0 + f64::EPSILON).unwrap();
        // between 1+eps (odd) and 1+2eps (even)
        assert_eq!((odd + half_ulp).round_to_f64(), 1.0 + 2.0 * f64::EPSILON);
    }

    #[test]
    fn round_overflow_and_subnormals() {
        let big = ExactRational::from_bigints(BigInt::from(1) << 1100u32, BigInt::from(1));
        assert_eq!(big.round_to_f64(), f64::INFINITY);
        assert_eq!((-big).round_to_f64(), f64::NEG_INFINITY);
        let max = ExactRational::from_f64(f64::MAX).unwrap();
        assert_eq!(max.round_to_f64(), f64::MAX);
        let min_sub = ExactRational::from_f64(f64::from_bits(1)).unwrap();
        assert_eq!(min_sub.round_to_f64().to_bits(), 1);
        // half of the smallest subnormal is a tie to zero, a hair above goes up
        let half = min_sub.clone() / r(2, 1);
        assert_eq!(half.round_to_f64(), 0.0);
        let above = half + ExactRational::from_bigints(BigInt::from(1), BigInt::from(1) << 1200u32);
        assert_eq!(above.round_to_f64().to_bits(), 1);
        let tiny = ExactRational::from_bigints(BigInt::from(1), BigInt::from(1) << 2000u32);
        assert_eq!(tiny.round_to_f64(), 0.0);
    }

    proptest! {
        #[test]
        fn round_agrees_with_search_oracle(n in any::<i64>(), d in 1i64..i64::MAX, k in -1100i32..1100) {
            let mut v = r(n, d);
            let scale = ExactRational::from_bigints(BigInt::from(1) << k.unsigned_abs(), BigInt::from(1));
            v = if k >= 0 { v * scale } else { v / scale };
            prop_assert_eq!(v.round_to_f64().to_bits(), rounding_oracle(&v).to_bits());
        }

        #[test]
        fn finite_floats_round_trip(bits in any::<u64>()) {
            let f = f64::from_bits(bits);
            prop_assume!(f.is_finite());
            let v = ExactRational::from_f64(f).unwrap();
            prop_assert_eq!(v.round_to_f64(), f);
        }
    }
}
