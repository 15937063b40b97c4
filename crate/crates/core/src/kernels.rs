//! Complex division and multiplication kernels.
//!
//! All kernels are straight-line code generic over [`RealScalar`]; the
//! operation order inside each one is fixed so float results are
//! reproducible. Cost figures below are per call.
//!
//! | kernel                | mul | add | square | div |
//! |-----------------------|-----|-----|--------|-----|
//! | [`divide_naive`]      | 4   | 3   | 2      | 2   |
//! | [`divide_fast`]       | 3   | 6   | 2      | 2   |
//! | [`divide_prepared`]   | 5   | 4   | 0      | 0   |
//! | [`mul_schoolbook`]    | 4   | 2   | 0      | 0   |
//! | [`gauss_mul_3m`]      | 3   | 5   | 0      | 0   |

use thiserror::Error;

use crate::scalar::RealScalar;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum KernelError {
    #[error("division by zero: divisor norm is zero")]
    DivisionByZero,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ComplexValue<S> {
    pub re: S,
    pub im: S,
}

impl<S> ComplexValue<S> {
    pub const fn new(re: S, im: S) -> Self {
        ComplexValue { re, im }
    }

    pub fn map<T>(self, mut f: impl FnMut(S) -> T) -> ComplexValue<T> {
        ComplexValue {
            re: f(self.re),
            im: f(self.im),
        }
    }
}

impl<S: RealScalar> ComplexValue<S> {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Complex conjugate. Costs one negation.
    pub fn conj(&self) -> Self {
        ComplexValue::new(self.re.clone(), -self.im.clone())
    }
}

impl ComplexValue<f64> {
    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// A divisor with its x-side work done once: `delta = 1/(xr² + xi²)` and
/// `xsum = xr + xi`.
#[derive(Clone, Debug, PartialEq)]
pub struct PreparedDenominator<S> {
    pub xr: S,
    pub xi: S,
    pub delta: S,
    pub xsum: S,
}

/// `xr² + xi²`: two squarings, one addition.
pub fn denom_norm<S: RealScalar>(x: &ComplexValue<S>) -> S {
    x.re.square() + x.im.square()
}

fn nonzero_norm<S: RealScalar>(x: &ComplexValue<S>) -> Result<S, KernelError> {
    let norm = denom_norm(x);
    if norm.is_zero() {
        Err(KernelError::DivisionByZero)
    } else {
        Ok(norm)
    }
}

/// Schoolbook quotient `a / x`: multiply by the conjugate of `x` and divide
/// both components by the norm.
///
/// Fails iff the computed norm is zero, which in floating point includes
/// norms that underflow. Infinities and NaNs otherwise propagate.
pub fn divide_naive<S: RealScalar>(
    a: &ComplexValue<S>,
    x: &ComplexValue<S>,
) -> Result<ComplexValue<S>, KernelError> {
    let norm = nonzero_norm(x)?;
    let p = a.re.clone() * x.re.clone() + a.im.clone() * x.im.clone();
    let q = a.im.clone() * x.re.clone() - a.re.clone() * x.im.clone();
    Ok(ComplexValue::new(p / norm.clone(), q / norm))
}

/// Real and imaginary parts of `a * conj(x)` with three multiplications.
///
/// ```text
/// s1 = ar - ai   s2 = ar + ai   s3 = xr + xi
/// m1 = s1 * xr   m2 = s2 * xi   m3 = ai * s3
/// p  = m1 + m3   q  = m3 - m2
/// ```
///
/// This is the factor chain `T23 · diag(s1, s2, ai) · T32 · (xr, xi)` with
/// `T32` rows (1,0)/(0,1)/(1,1) and `T23` rows (1,0,1)/(0,-1,1). The only
/// sign change is folded into the final subtraction.
pub fn conj_num_3m<S: RealScalar>(a: &ComplexValue<S>, x: &ComplexValue<S>) -> (S, S) {
    let s1 = a.re.clone() - a.im.clone();
    let s2 = a.re.clone() + a.im.clone();
    let s3 = x.re.clone() + x.im.clone();
    let m1 = s1 * x.re.clone();
    let m2 = s2 * x.im.clone();
    let m3 = a.im.clone() * s3;
    let p = m1 + m3.clone();
    let q = m3 - m2;
    (p, q)
}

/// Three-multiplication quotient `a / x`.
///
/// The `diag(δ, δ)` step is two literal divisions by the norm, so the cost
/// is 3 mul, 6 add, 2 square, 2 div and no negations.
pub fn divide_fast<S: RealScalar>(
    a: &ComplexValue<S>,
    x: &ComplexValue<S>,
) -> Result<ComplexValue<S>, KernelError> {
    let norm = nonzero_norm(x)?;
    let (p, q) = conj_num_3m(a, x);
    Ok(ComplexValue::new(p / norm.clone(), q / norm))
}

/// The factor chain with the uncorrected matrices taken literally:
/// `D3 = diag(ar - ai, -(ar + ai), ai)`, `T23` rows (1,0,1)/(0,1,1),
/// `T32` rows (1,0)/(0,-1)/(1,1).
///
/// Its imaginary part is `(ai·xr + ar·xi + 2·ai·xi) / R`, which is not the
/// quotient. Kept for auditing only.
pub fn divide_fast_printed<S: RealScalar>(
    a: &ComplexValue<S>,
    x: &ComplexValue<S>,
) -> Result<ComplexValue<S>, KernelError> {
    let norm = nonzero_norm(x)?;
    let d1 = a.re.clone() - a.im.clone();
    let d2 = -(a.re.clone() + a.im.clone());
    let v1 = x.re.clone();
    let v2 = -x.im.clone();
    let v3 = x.re.clone() + x.im.clone();
    let m1 = d1 * v1;
    let m2 = d2 * v2;
    let m3 = a.im.clone() * v3;
    let row1 = m1 + m3.clone();
    let row2 = m2 + m3;
    Ok(ComplexValue::new(row1 / norm.clone(), row2 / norm))
}

/// `a * b` with 4 multiplications and 2 additions.
pub fn mul_schoolbook<S: RealScalar>(a: &ComplexValue<S>, b: &ComplexValue<S>) -> ComplexValue<S> {
    ComplexValue::new(
        a.re.clone() * b.re.clone() - a.im.clone() * b.im.clone(),
        a.re.clone() * b.im.clone() + a.im.clone() * b.re.clone(),
    )
}

/// `a * b` with 3 multiplications and 5 additions.
///
/// ```text
/// k1 = br * (ar + ai)
/// k2 = ar * (bi - br)
/// k3 = ai * (br + bi)
/// re = k1 - k3,  im = k1 + k2
/// ```
pub fn gauss_mul_3m<S: RealScalar>(a: &ComplexValue<S>, b: &ComplexValue<S>) -> ComplexValue<S> {
    let k1 = b.re.clone() * (a.re.clone() + a.im.clone());
    let k2 = a.re.clone() * (b.im.clone() - b.re.clone());
    let k3 = a.im.clone() * (b.re.clone() + b.im.clone());
    ComplexValue::new(k1.clone() - k3, k1 + k2)
}

/// Precomputes `1/R` and `xr + xi` for repeated division by `x`.
/// Costs 2 square, 2 add, 1 div once.
pub fn prepare_denominator<S: RealScalar>(
    x: &ComplexValue<S>,
) -> Result<PreparedDenominator<S>, KernelError> {
    let norm = nonzero_norm(x)?;
    Ok(PreparedDenominator {
        xr: x.re.clone(),
        xi: x.im.clone(),
        delta: S::from_i32(1) / norm,
        xsum: x.re.clone() + x.im.clone(),
    })
}

/// Same quotient as [`divide_fast`] against a prepared divisor. Applying
/// `δ` is a multiplication here, so a call costs 5 mul and 4 add.
pub fn divide_prepared<S: RealScalar>(
    a: &ComplexValue<S>,
    d: &PreparedDenominator<S>,
) -> ComplexValue<S> {
    let s1 = a.re.clone() - a.im.clone();
    let s2 = a.re.clone() + a.im.clone();
    let m1 = s1 * d.xr.clone();
    let m2 = s2 * d.xi.clone();
    let m3 = a.im.clone() * d.xsum.clone();
    let p = m1 + m3.clone();
    let q = m3 - m2;
    ComplexValue::new(p * d.delta.clone(), q * d.delta.clone())
}

/// Scaled division that never forms `xr² + xi²`.
///
/// Divides through by the larger divisor component; ties and NaN
/// magnitudes take the `xr` branch.
pub fn divide_smith<S: RealScalar>(
    a: &ComplexValue<S>,
    x: &ComplexValue<S>,
) -> Result<ComplexValue<S>, KernelError> {
    if x.is_zero() {
        return Err(KernelError::DivisionByZero);
    }
    let y = if x.im.abs() > x.re.abs() {
        let t = x.re.clone() / x.im.clone();
        let den = x.im.clone() + x.re.clone() * t.clone();
        ComplexValue::new(
            (a.re.clone() * t.clone() + a.im.clone()) / den.clone(),
            (a.im.clone() * t - a.re.clone()) / den,
        )
    } else {
        let t = x.im.clone() / x.re.clone();
        let den = x.re.clone() + x.im.clone() * t.clone();
        ComplexValue::new(
            (a.re.clone() + a.im.clone() * t.clone()) / den.clone(),
            (a.im.clone() - a.re.clone() * t) / den,
        )
    };
    Ok(y)
}
