use super::AnalysisError;
use crate::kernels::{self, ComplexValue, KernelError};
use crate::scalar::ExactRational;

/// Correctly rounded quotient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleQuotient {
    pub value: ComplexValue<f64>,
    /// The exact quotient has a component beyond the finite range; that
    /// component is a signed infinity.
    pub overflow: bool,
}

fn exact(v: &ComplexValue<f64>) -> Result<ComplexValue<ExactRational>, AnalysisError> {
    Ok(ComplexValue::new(
        ExactRational::from_f64(v.re).ok_or(AnalysisError::NonFiniteInput)?,
        ExactRational::from_f64(v.im).ok_or(AnalysisError::NonFiniteInput)?,
    ))
}

/// Promotes the inputs exactly, divides over the rationals and rounds each
/// component once to the nearest `f64`.
pub fn oracle_divide(
    a: &ComplexValue<f64>,
    x: &ComplexValue<f64>,
) -> Result<OracleQuotient, AnalysisError> {
    let (qa, qx) = (exact(a)?, exact(x)?);
    if qx.is_zero() {
        return Err(KernelError::DivisionByZero.into());
    }
    let y = kernels::divide_naive(&qa, &qx)?;
    let value = ComplexValue::new(y.re.round_to_f64(), y.im.round_to_f64());
    Ok(OracleQuotient {
        value,
        overflow: value.re.is_infinite() || value.im.is_infinite(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue<f64> {
        ComplexValue::new(re, im)
    }

    #[test]
    fn oracle_examples() {
        let q = oracle_divide(&c(3.0, 4.0), &c(1.0, 2.0)).unwrap();
        assert_eq!(q.value, c(2.2, -0.4));
        assert!(!q.overflow);
        let x = c(0.1, -7.3e10);
        assert_eq!(oracle_divide(&x, &x).unwrap().value, c(1.0, 0.0));
        assert_eq!(
            oracle_divide(&c(1.0, 0.0), &c(3.0, 0.0)).unwrap().value,
            c(1.0 / 3.0, 0.0)
        );
    }

    #[test]
    fn oracle_errors_and_overflow() {
        assert!(matches!(
            oracle_divide(&c(1.0, 0.0), &c(0.0, 0.0)),
            Err(AnalysisError::Kernel(KernelError::DivisionByZero))
        ));
        assert!(matches!(
            oracle_divide(&c(f64::NAN, 0.0), &c(1.0, 0.0)),
            Err(AnalysisError::NonFiniteInput)
        ));
        let q = oracle_divide(&c(1e300, 0.0), &c(1e-300, 0.0)).unwrap();
        assert!(q.overflow);
        assert_eq!(q.value.re, f64::INFINITY);
        // tiny divisor whose square underflows is still exact here
        let q = oracle_divide(&c(1.0, 0.0), &c(1e-200, 1e-200)).unwrap();
        assert!(!q.overflow);
        assert!((q.value.re - 5e199).abs() / 5e199 < 1e-15);
    }
}
