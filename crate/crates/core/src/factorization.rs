//! Explicit matrix view of the factorized division.
//!
//! The quotient is `Y = (1/R) · A2 · X` with `A2 = [[ar, ai], [ai, -ar]]`.
//! The factor chain `D2 · T23 · D3 · T32` replaces the dense `A2/R`; the
//! `T` factors only hold entries in {-1, 0, 1}, so every general
//! multiplication sits in a diagonal factor.
//!
//! Three variants are materialized:
//!
//! * [`Variant::Printed`]: the uncorrected matrices. Its second row
//!   composes to `(ai, ar + 2ai)` instead of `(ai, -ar)`.
//! * [`Variant::CorrectedA`]: `D3 = diag(ar - ai, ar + ai, ai)`, `T23` rows
//!   (1,0,1)/(0,-1,1), `T32` rows (1,0)/(0,1)/(1,1). No negations.
//! * [`Variant::CorrectedB`]: `D3` and `T23` uncorrected, `T32` row 2
//!   changed to (0,1). Needs one negation when building `D3`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::kernels::{self, ComplexValue, KernelError};
use crate::scalar::{ExactRational, RealScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("unknown factorization variant `{0}` (expected printed, corrected-a or corrected-b)")]
    UnknownVariant(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Printed,
    CorrectedA,
    CorrectedB,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::CorrectedA, Variant::CorrectedB, Variant::Printed];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Printed => "printed",
            Variant::CorrectedA => "corrected-A",
            Variant::CorrectedB => "corrected-B",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = FactorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "printed" => Ok(Variant::Printed),
            "corrected-a" | "a" => Ok(Variant::CorrectedA),
            "corrected-b" | "b" => Ok(Variant::CorrectedB),
            _ => Err(FactorError::UnknownVariant(s.to_string())),
        }
    }
}

/// Entry of a `T` matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    Minus,
    Zero,
    Plus,
}

impl Unit {
    pub fn to_i8(self) -> i8 {
        match self {
            Unit::Minus => -1,
            Unit::Zero => 0,
            Unit::Plus => 1,
        }
    }

    fn from_i8(v: i8) -> Unit {
        match v {
            -1 => Unit::Minus,
            0 => Unit::Zero,
            1 => Unit::Plus,
            _ => unreachable!("T entries are -1, 0 or 1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<S>(pub [[S; 2]; 2]);

impl<S: RealScalar> Mat2<S> {
    pub fn mul_vec(&self, x: &ComplexValue<S>) -> ComplexValue<S> {
        let [[a, b], [c, d]] = &self.0;
        ComplexValue::new(
            a.clone() * x.re.clone() + b.clone() * x.im.clone(),
            c.clone() * x.re.clone() + d.clone() * x.im.clone(),
        )
    }

    pub fn scale(&self, k: &S) -> Mat2<S> {
        Mat2(self.0.clone().map(|row| row.map(|v| k.clone() * v)))
    }

    /// First differing entry as a 1-based (row, column) pair.
    pub fn first_mismatch(&self, other: &Mat2<S>) -> Option<(usize, usize)> {
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .find(|&(i, j)| self.0[i][j] != other.0[i][j])
            .map(|(i, j)| (i + 1, j + 1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat2x3(pub [[Unit; 3]; 2]);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mat3x2(pub [[Unit; 2]; 3]);

impl Mat2x3 {
    fn from_rows(rows: [[i8; 3]; 2]) -> Self {
        Mat2x3(rows.map(|r| r.map(Unit::from_i8)))
    }

    pub fn entries(&self) -> impl Iterator<Item = Unit> + '_ {
        self.0.iter().flatten().copied()
    }
}

impl Mat3x2 {
    fn from_rows(rows: [[i8; 2]; 3]) -> Self {
        Mat3x2(rows.map(|r| r.map(Unit::from_i8)))
    }

    pub fn entries(&self) -> impl Iterator<Item = Unit> + '_ {
        self.0.iter().flatten().copied()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diag3<S>(pub [S; 3]);

/// The four factors of one variant. `d2` is the common diagonal entry of
/// `D2 = δI`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorSet<S> {
    pub d2: S,
    pub t23: Mat2x3,
    pub d3: Diag3<S>,
    pub t32: Mat3x2,
    pub variant: Variant,
}

/// Signed sum of `values` selected by one `T` row: positive terms are summed
/// first and negative terms subtracted, so a sign change only costs a
/// negation when a row has no positive entry.
fn signed_gather<S: RealScalar>(row: &[Unit], values: &[S]) -> Option<S> {
    let mut acc: Option<S> = None;
    for (u, v) in row.iter().zip(values) {
        if *u == Unit::Plus {
            acc = Some(match acc {
                Some(s) => s + v.clone(),
                None => v.clone(),
            });
        }
    }
    for (u, v) in row.iter().zip(values) {
        if *u == Unit::Minus {
            acc = Some(match acc {
                Some(s) => s - v.clone(),
                None => -v.clone(),
            });
        }
    }
    acc
}

fn gather_or_zero<S: RealScalar>(row: &[Unit], values: &[S]) -> S {
    signed_gather(row, values).unwrap_or_else(|| S::from_i32(0))
}

/// `A2 = [[ar, ai], [ai, -ar]]`.
pub fn build_a2<S: RealScalar>(a: &ComplexValue<S>) -> Mat2<S> {
    Mat2([[a.re.clone(), a.im.clone()], [a.im.clone(), -a.re.clone()]])
}

pub fn build_factors<S: RealScalar>(
    a: &ComplexValue<S>,
    delta: S,
    variant: Variant,
) -> FactorSet<S> {
    let diff = a.re.clone() - a.im.clone();
    let sum = a.re.clone() + a.im.clone();
    let (t23, d3, t32) = match variant {
        Variant::Printed => (
            Mat2x3::from_rows([[1, 0, 1], [0, 1, 1]]),
            [diff, -sum, a.im.clone()],
            Mat3x2::from_rows([[1, 0], [0, -1], [1, 1]]),
        ),
        Variant::CorrectedA => (
            Mat2x3::from_rows([[1, 0, 1], [0, -1, 1]]),
            [diff, sum, a.im.clone()],
            Mat3x2::from_rows([[1, 0], [0, 1], [1, 1]]),
        ),
        Variant::CorrectedB => (
            Mat2x3::from_rows([[1, 0, 1], [0, 1, 1]]),
            [diff, -sum, a.im.clone()],
            Mat3x2::from_rows([[1, 0], [0, 1], [1, 1]]),
        ),
    };
    FactorSet {
        d2: delta,
        t23,
        d3: Diag3(d3),
        t32,
        variant,
    }
}

/// Dense product `D2 · T23 · D3 · T32`.
pub fn compose<S: RealScalar>(f: &FactorSet<S>) -> Mat2<S> {
    let entry = |i: usize, j: usize| {
        let terms: Vec<S> =
            f.d3.0
                .iter()
                .zip(&f.t32.0)
                .map(|(d, t32_row)| match t32_row[j] {
                    Unit::Zero => S::from_i32(0),
                    Unit::Plus => d.clone(),
                    Unit::Minus => -d.clone(),
                })
                .collect();
        f.d2.clone() * gather_or_zero(&f.t23.0[i], &terms)
    };
    Mat2([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
}

/// Applies the chain right to left without forming the dense product.
/// `T` rows are signed sums, so multiplications happen only in `D3` (three)
/// and `D2` (two, by `δ`).
pub fn apply<S: RealScalar>(f: &FactorSet<S>, x: &ComplexValue<S>) -> ComplexValue<S> {
    let xv = [x.re.clone(), x.im.clone()];
    let v: Vec<S> = f.t32.0.iter().map(|row| gather_or_zero(row, &xv)).collect();
    let m: Vec<S> = f.d3.0.iter().zip(v).map(|(d, v)| d.clone() * v).collect();
    let y_re = gather_or_zero(&f.t23.0[0], &m);
    let y_im = gather_or_zero(&f.t23.0[1], &m);
    ComplexValue::new(f.d2.clone() * y_re, f.d2.clone() * y_im)
}

/// One variant's verdict on one input.
#[derive(Clone, Debug, PartialEq)]
pub struct VariantAudit {
    pub variant: Variant,
    pub compose_pass: bool,
    pub apply_pass: bool,
    /// First composed entry differing from `A2/R`, 1-based.
    pub first_mismatch: Option<(usize, usize)>,
    pub composed: Mat2<ExactRational>,
    pub expected: Mat2<ExactRational>,
    pub applied: ComplexValue<ExactRational>,
    pub quotient: ComplexValue<ExactRational>,
}

impl VariantAudit {
    pub fn pass(&self) -> bool {
        self.compose_pass && self.apply_pass
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditReport {
    pub a: ComplexValue<ExactRational>,
    pub x: ComplexValue<ExactRational>,
    pub variants: Vec<VariantAudit>,
}

impl AuditReport {
    pub fn variant(&self, v: Variant) -> &VariantAudit {
        self.variants
            .iter()
            .find(|r| r.variant == v)
            .expect("every variant is audited")
    }
}

/// Checks every variant against `A2/R` at the matrix level and against the
/// schoolbook quotient at the vector level, in exact arithmetic.
pub fn audit(
    a: &ComplexValue<ExactRational>,
    x: &ComplexValue<ExactRational>,
) -> Result<AuditReport, FactorError> {
    let quotient = kernels::divide_naive(a, x)?;
    let delta = ExactRational::from_integer(1) / kernels::denom_norm(x);
    let expected = build_a2(a).scale(&delta);
    let variants = Variant::ALL
        .iter()
        .map(|&variant| {
            let f = build_factors(a, delta.clone(), variant);
            let composed = compose(&f);
            let applied = apply(&f, x);
            let first_mismatch = composed.first_mismatch(&expected);
            VariantAudit {
                variant,
                compose_pass: first_mismatch.is_none(),
                apply_pass: applied == quotient,
                first_mismatch,
                composed,
                expected: expected.clone(),
                applied,
                quotient: quotient.clone(),
            }
        })
        .collect();
    Ok(AuditReport {
        a: a.clone(),
        x: x.clone(),
        variants,
    })
}

/// Per-variant outcome over the integer grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridVariantSummary {
    pub variant: Variant,
    pub cases: usize,
    pub compose_failures: usize,
    pub apply_failures: usize,
    pub first_failure: Option<GridFailure>,
}

/// A failing grid point and the first composed entry that differs there
/// (`None` when only the vector check failed).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridFailure {
    pub a: ComplexValue<i64>,
    pub x: ComplexValue<i64>,
    pub entry: Option<(usize, usize)>,
}

impl GridVariantSummary {
    pub fn all_pass(&self) -> bool {
        self.compose_failures == 0 && self.apply_failures == 0
    }
}

/// Integer points with every component in `[-half_width, half_width]`.
pub fn integer_grid(half_width: i64) -> impl Iterator<Item = ComplexValue<i64>> {
    (-half_width..=half_width)
        .flat_map(move |re| (-half_width..=half_width).map(move |im| ComplexValue::new(re, im)))
}

pub fn exact(v: &ComplexValue<i64>) -> ComplexValue<ExactRational> {
    ComplexValue::new(
        ExactRational::from_integer(v.re),
        ExactRational::from_integer(v.im),
    )
}

/// Audits every `(a, x)` with `x != 0` on the grid of the given half-width.
pub fn audit_grid(half_width: i64) -> Vec<GridVariantSummary> {
    let mut summaries: Vec<GridVariantSummary> = Variant::ALL
        .iter()
        .map(|&variant| GridVariantSummary {
            variant,
            cases: 0,
            compose_failures: 0,
            apply_failures: 0,
            first_failure: None,
        })
        .collect();
    for a in integer_grid(half_width) {
        for x in integer_grid(half_width).filter(|x| x.re != 0 || x.im != 0) {
            let report = audit(&exact(&a), &exact(&x)).expect("grid divisors are nonzero");
            for (summary, r) in summaries.iter_mut().zip(&report.variants) {
                summary.cases += 1;
                summary.compose_failures += usize::from(!r.compose_pass);
                summary.apply_failures += usize::from(!r.apply_pass);
                if !r.pass() && summary.first_failure.is_none() {
                    summary.first_failure = Some(GridFailure {
                        a,
                        x,
                        entry: r.first_mismatch,
                    });
                }
            }
        }
    }
    summaries
}
