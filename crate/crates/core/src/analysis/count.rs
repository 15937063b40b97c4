use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use super::AnalysisError;
use crate::kernels::{self, ComplexValue};
use crate::scalar::{CountingScalar, OpTally};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountAlgorithm {
    Naive,
    Fast,
    MulSchoolbook,
    GaussMul,
    Prepared,
}

impl CountAlgorithm {
    pub const ALL: [CountAlgorithm; 5] = [
        CountAlgorithm::Naive,
        CountAlgorithm::Fast,
        CountAlgorithm::MulSchoolbook,
        CountAlgorithm::GaussMul,
        CountAlgorithm::Prepared,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountAlgorithm::Naive => "naive",
            CountAlgorithm::Fast => "fast",
            CountAlgorithm::MulSchoolbook => "mul_schoolbook",
            CountAlgorithm::GaussMul => "gauss_mul",
            CountAlgorithm::Prepared => "prepared",
        }
    }
}

impl fmt::Display for CountAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountAlgorithm {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| AnalysisError::UnknownAlgorithm(s.to_string()))
    }
}

/// Reference per-call cost of each kernel. The Gauss add count and the
/// prepared-divisor figures come from this crate's arrangements.
pub fn expected_tally(alg: CountAlgorithm) -> OpTally {
    match alg {
        CountAlgorithm::Naive => OpTally::new(4, 3, 2, 2),
        CountAlgorithm::Fast => OpTally::new(3, 6, 2, 2),
        CountAlgorithm::MulSchoolbook => OpTally::new(4, 2, 0, 0),
        CountAlgorithm::GaussMul => OpTally::new(3, 5, 0, 0),
        CountAlgorithm::Prepared => OpTally::new(5, 4, 0, 0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub algorithm: CountAlgorithm,
    pub measured: OpTally,
    pub expected: OpTally,
    /// `measured` equals `expected` on mul, add, square and div.
    pub matched: bool,
}

/// Counts one call on the fixed operands `a = 3 + 4i`, `x = 1 + 2i`.
pub fn run_count(alg: CountAlgorithm) -> CountReport {
    run_count_on(
        alg,
        ComplexValue::new(3.0, 4.0),
        ComplexValue::new(1.0, 2.0),
    )
}

/// Counts one call on the given operands. Division kernels need `x != 0`;
/// for the prepared kernel only the per-call work is counted.
pub fn run_count_on(
    alg: CountAlgorithm,
    a: ComplexValue<f64>,
    x: ComplexValue<f64>,
) -> CountReport {
    let tally = Cell::new(OpTally::ZERO);
    let lift = |v: ComplexValue<f64>| v.map(|s| CountingScalar::new(s, &tally));
    let (ca, cx) = (lift(a), lift(x));
    match alg {
        CountAlgorithm::Naive => {
            kernels::divide_naive(&ca, &cx).expect("nonzero divisor");
        }
        CountAlgorithm::Fast => {
            kernels::divide_fast(&ca, &cx).expect("nonzero divisor");
        }
        CountAlgorithm::MulSchoolbook => {
            kernels::mul_schoolbook(&ca, &cx);
        }
        CountAlgorithm::GaussMul => {
            kernels::gauss_mul_3m(&ca, &cx);
        }
        CountAlgorithm::Prepared => {
            let setup = Cell::new(OpTally::ZERO);
            let d = kernels::prepare_denominator(&x.map(|s| CountingScalar::new(s, &setup)))
                .expect("nonzero divisor");
            kernels::divide_prepared(&ca, &d);
        }
    }
    let measured = tally.get();
    let expected = expected_tally(alg);
    CountReport {
        algorithm: alg,
        measured,
        expected,
        matched: measured.same_cost(&expected),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reference_counts() {
        let naive = run_count(CountAlgorithm::Naive);
        assert_eq!(naive.measured, OpTally::new(4, 3, 2, 2));
        assert!(naive.matched);
        let fast = run_count(CountAlgorithm::Fast);
        assert_eq!(fast.measured, OpTally::new(3, 6, 2, 2));
        assert!(fast.matched);
        assert_eq!(run_count(CountAlgorithm::GaussMul).measured.mul, 3);
        assert_eq!(
            run_count(CountAlgorithm::MulSchoolbook).measured,
            OpTally::new(4, 2, 0, 0)
        );
        assert_eq!(
            run_count(CountAlgorithm::Prepared).measured,
            OpTally::new(5, 4, 0, 0)
        );
    }

    #[test]
    fn names_round_trip() {
        for alg in CountAlgorithm::ALL {
            assert_eq!(alg.name().parse::<CountAlgorithm>().unwrap(), alg);
        }
        assert!(matches!(
            "bogus".parse::<CountAlgorithm>(),
            Err(AnalysisError::UnknownAlgorithm(_))
        ));
    }

    proptest! {
        #[test]
        fn counts_do_not_depend_on_operands(
            ar in -1e6f64..1e6, ai in -1e6f64..1e6,
            xr in -1e6f64..1e6, xi in -1e6f64..1e6,
        ) {
            prop_assume!(xr != 0.0 || xi != 0.0);
            for alg in CountAlgorithm::ALL {
                let r = run_count_on(alg, ComplexValue::new(ar, ai), ComplexValue::new(xr, xi));
                prop_assert_eq!(r.measured, run_count(alg).measured);
                prop_assert!(r.matched);
            }
        }
    }
}
