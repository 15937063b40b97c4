use std::cell::Cell;
use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use super::oracle::oracle_divide;
use super::probe::{ProbeLog, ProbeScalar};
use super::rng::SampleStream;
use super::AnalysisError;
use crate::factorization::integer_grid;
use crate::kernels::{self, ComplexValue, KernelError};
use crate::scalar::ulp_distance;

/// Half-width of the integer grid used by [`Distribution::Grid`].
pub const GRID_HALF_WIDTH: i64 = 3;

pub const CSV_HEADER: [&str; 14] = [
    "a_re",
    "a_im",
    "x_re",
    "x_im",
    "alg",
    "y_re",
    "y_im",
    "ref_re",
    "ref_im",
    "relerr_re",
    "relerr_im",
    "ulp_re",
    "ulp_im",
    "flags",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepAlgorithm {
    Naive,
    Fast,
    Prepared,
    Smith,
}

impl SweepAlgorithm {
    pub const ALL: [SweepAlgorithm; 4] = [
        SweepAlgorithm::Naive,
        SweepAlgorithm::Fast,
        SweepAlgorithm::Prepared,
        SweepAlgorithm::Smith,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepAlgorithm::Naive => "naive",
            SweepAlgorithm::Fast => "fast",
            SweepAlgorithm::Prepared => "prepared",
            SweepAlgorithm::Smith => "smith",
        }
    }

    /// Runs the kernel once in `f64`.
    pub fn divide(
        self,
        a: &ComplexValue<f64>,
        x: &ComplexValue<f64>,
    ) -> Result<ComplexValue<f64>, KernelError> {
        divide_with(self, a, x)
    }
}

fn divide_with<S: crate::scalar::RealScalar>(
    alg: SweepAlgorithm,
    a: &ComplexValue<S>,
    x: &ComplexValue<S>,
) -> Result<ComplexValue<S>, KernelError> {
    match alg {
        SweepAlgorithm::Naive => kernels::divide_naive(a, x),
        SweepAlgorithm::Fast => kernels::divide_fast(a, x),
        SweepAlgorithm::Prepared => {
            kernels::prepare_denominator(x).map(|d| kernels::divide_prepared(a, &d))
        }
        SweepAlgorithm::Smith => kernels::divide_smith(a, x),
    }
}

impl fmt::Display for SweepAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAlgorithm {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| AnalysisError::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distribution {
    /// Components `±10^e`, `e` uniform in [-3, 3).
    WellScaled,
    /// Components `±10^e`, `e` uniform in [-300, 300).
    Extreme,
    /// Every `a` and nonzero `x` on the integer grid of half-width
    /// [`GRID_HALF_WIDTH`].
    Grid,
}

impl Distribution {
    pub fn name(self) -> &'static str {
        match self {
            Distribution::WellScaled => "wellscaled",
            Distribution::Extreme => "extreme",
            Distribution::Grid => "grid",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wellscaled" => Ok(Distribution::WellScaled),
            "extreme" => Ok(Distribution::Extreme),
            "grid" => Ok(Distribution::Grid),
            _ => Err(AnalysisError::UnknownDistribution(s.to_string())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub algorithm: SweepAlgorithm,
    pub distribution: Distribution,
    /// Ignored by the grid distribution.
    pub sample_count: usize,
    /// Ignored by the grid distribution.
    pub seed: u64,
    pub output_path: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FlagSet {
    pub overflow: bool,
    pub underflow: bool,
    pub nan: bool,
    pub divzero: bool,
}

impl FlagSet {
    pub fn is_empty(&self) -> bool {
        *self == FlagSet::default()
    }

    pub fn tokens(&self) -> Vec<&'static str> {
        [
            (self.overflow, "overflow"),
            (self.underflow, "underflow"),
            (self.nan, "nan"),
            (self.divzero, "divzero"),
        ]
        .into_iter()
        .filter_map(|(on, t)| on.then_some(t))
        .collect()
    }
}

impl fmt::Display for FlagSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join("|"))
    }
}

/// Everything [`classify_flags`] looks at for one division.
#[derive(Clone, Copy, Debug)]
pub struct FlagInputs {
    pub inputs_finite: bool,
    /// An intermediate or output became infinite.
    pub intermediate_infinite: bool,
    /// A divisor (the norm, for the norm-based kernels) was zero or
    /// subnormal.
    pub tiny_divisor: bool,
    /// The kernel refused to divide because the computed norm was zero.
    pub divzero: bool,
    pub output: Option<ComplexValue<f64>>,
    pub reference: Option<ComplexValue<f64>>,
    pub reference_overflow: bool,
}

fn is_subnormal(v: f64) -> bool {
    v != 0.0 && v.abs() < f64::MIN_POSITIVE
}

pub fn classify_flags(f: &FlagInputs) -> FlagSet {
    let out = f.output;
    let any_out = |p: fn(f64) -> bool| out.is_some_and(|y| p(y.re) || p(y.im));
    let subnormal_loss = match (out, f.reference) {
        (Some(y), Some(r)) => {
            (is_subnormal(y.re) && !is_subnormal(r.re))
                || (is_subnormal(y.im) && !is_subnormal(r.im))
        }
        (Some(y), None) => is_subnormal(y.re) || is_subnormal(y.im),
        _ => false,
    };
    FlagSet {
        overflow: f.inputs_finite
            && (f.intermediate_infinite || any_out(f64::is_infinite) || f.reference_overflow),
        underflow: f.tiny_divisor || f.divzero || subnormal_loss,
        nan: any_out(f64::is_nan),
        divzero: f.divzero,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub a: ComplexValue<f64>,
    pub x: ComplexValue<f64>,
    pub algorithm: SweepAlgorithm,
    /// NaN components when the kernel refused to divide.
    pub y: ComplexValue<f64>,
    pub reference: ComplexValue<f64>,
    pub relerr: ComplexValue<f64>,
    pub ulp: ComplexValue<Option<u64>>,
    pub flags: FlagSet,
}

fn relative_error(y: f64, reference: f64) -> f64 {
    (y - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}

/// Runs one division, compares it to the oracle and classifies it.
pub fn evaluate(alg: SweepAlgorithm, a: &ComplexValue<f64>, x: &ComplexValue<f64>) -> SweepRecord {
    let log = Cell::new(ProbeLog::default());
    let probe = |v: &ComplexValue<f64>| v.map(|s| ProbeScalar::new(s, &log));
    let result = divide_with(alg, &probe(a), &probe(x)).map(|y| y.map(ProbeScalar::value));
    let oracle = oracle_divide(a, x).ok();
    let reference = oracle.map_or(ComplexValue::new(f64::NAN, f64::NAN), |o| o.value);
    let y = result.unwrap_or(ComplexValue::new(f64::NAN, f64::NAN));
    let events = log.get();
    let flags = classify_flags(&FlagInputs {
        inputs_finite: a.is_finite() && x.is_finite(),
        intermediate_infinite: events.infinite,
        tiny_divisor: events.tiny_divisor,
        divzero: result.is_err(),
        output: result.ok(),
        reference: oracle.map(|o| o.value),
        reference_overflow: oracle.is_some_and(|o| o.overflow),
    });
    SweepRecord {
        a: *a,
        x: *x,
        algorithm: alg,
        y,
        reference,
        relerr: ComplexValue::new(
            relative_error(y.re, reference.re),
            relative_error(y.im, reference.im),
        ),
        ulp: ComplexValue::new(
            ulp_distance(y.re, reference.re),
            ulp_distance(y.im, reference.im),
        ),
        flags,
    }
}

/// Inputs for a sweep. Each random sample draws `a_re, a_im, x_re, x_im`
/// in that order.
pub fn sample_inputs(
    distribution: Distribution,
    sample_count: usize,
    seed: u64,
) -> Vec<(ComplexValue<f64>, ComplexValue<f64>)> {
    let draw = |lo: f64, hi: f64| {
        let mut s = SampleStream::new(seed);
        (0..sample_count)
            .map(|_| {
                let mut c = || {
                    ComplexValue::new(s.signed_log_uniform(lo, hi), s.signed_log_uniform(lo, hi))
                };
                let a = c();
                (a, c())
            })
            .collect()
    };
    match distribution {
        Distribution::WellScaled => draw(-3.0, 3.0),
        Distribution::Extreme => draw(-300.0, 300.0),
        Distribution::Grid => integer_grid(GRID_HALF_WIDTH)
            .flat_map(|a| {
                integer_grid(GRID_HALF_WIDTH)
                    .filter(|x| x.re != 0 || x.im != 0)
                    .map(move |x| (a.map(|v| v as f64), x.map(|v| v as f64)))
            })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComponentStats {
    pub max_relerr: f64,
    pub median_relerr: f64,
    pub max_ulp: u64,
    pub median_ulp: u64,
    /// Records whose ULP field is comparable.
    pub comparable: usize,
}

impl ComponentStats {
    fn from_samples(relerr: Vec<f64>, mut ulp: Vec<u64>) -> Self {
        let mut relerr = relerr;
        relerr.sort_by(f64::total_cmp);
        ulp.sort_unstable();
        let median_f = |v: &[f64]| match v.len() {
            0 => 0.0,
            n if n % 2 == 1 => v[n / 2],
            n => (v[n / 2 - 1] + v[n / 2]) / 2.0,
        };
        ComponentStats {
            max_relerr: relerr.last().copied().unwrap_or(0.0),
            median_relerr: median_f(&relerr),
            max_ulp: ulp.last().copied().unwrap_or(0),
            median_ulp: if ulp.is_empty() {
                0
            } else {
                ulp[(ulp.len() - 1) / 2]
            },
            comparable: ulp.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSummary {
    pub algorithm: SweepAlgorithm,
    pub distribution: Distribution,
    pub records: usize,
    pub re: ComponentStats,
    pub im: ComponentStats,
    pub overflow: usize,
    pub underflow: usize,
    pub nan: usize,
    pub divzero: usize,
    /// Records with any flag set.
    pub flagged: usize,
}

impl SweepSummary {
    fn from_records(
        algorithm: SweepAlgorithm,
        distribution: Distribution,
        records: &[SweepRecord],
    ) -> Self {
        let stats = |pick: fn(&SweepRecord) -> (f64, Option<u64>)| {
            let (relerr, ulp): (Vec<f64>, Vec<u64>) = records
                .iter()
                .filter_map(|r| match pick(r) {
                    (e, Some(u)) => Some((e, u)),
                    _ => None,
                })
                .unzip();
            ComponentStats::from_samples(relerr, ulp)
        };
        let count = |p: fn(&FlagSet) -> bool| records.iter().filter(|r| p(&r.flags)).count();
        SweepSummary {
            algorithm,
            distribution,
            records: records.len(),
            re: stats(|r| (r.relerr.re, r.ulp.re)),
            im: stats(|r| (r.relerr.im, r.ulp.im)),
            overflow: count(|f| f.overflow),
            underflow: count(|f| f.underflow),
            nan: count(|f| f.nan),
            divzero: count(|f| f.divzero),
            flagged: count(|f| !f.is_empty()),
        }
    }

    pub fn max_ulp(&self) -> u64 {
        self.re.max_ulp.max(self.im.max_ulp)
    }
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {}: {} records; max ulp re={} im={}; median ulp re={} im={}; max relerr re={:e} im={:e}; \
             flags overflow={} underflow={} nan={} divzero={} (flagged {})",
            self.algorithm,
            self.distribution,
            self.records,
            self.re.max_ulp,
            self.im.max_ulp,
            self.re.median_ulp,
            self.im.median_ulp,
            self.re.max_relerr,
            self.im.max_relerr,
            self.overflow,
            self.underflow,
            self.nan,
            self.divzero,
            self.flagged
        )
    }
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub summary: SweepSummary,
}

/// Draws the inputs, evaluates them in parallel (output order follows input
/// order), and writes the CSV when an output path is configured.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome, AnalysisError> {
    if cfg.distribution != Distribution::Grid && cfg.sample_count == 0 {
        return Err(AnalysisError::InvalidConfig(
            "sample count must be at least 1".into(),
        ));
    }
    let inputs = sample_inputs(cfg.distribution, cfg.sample_count, cfg.seed);
    let records: Vec<SweepRecord> = inputs
        .par_iter()
        .map(|(a, x)| evaluate(cfg.algorithm, a, x))
        .collect();
    if let Some(path) = &cfg.output_path {
        let output_err = |source| AnalysisError::Output {
            path: path.display().to_string(),
            source,
        };
        let file = File::create(path).map_err(output_err)?;
        let mut w = io::BufWriter::new(file);
        write_csv(&records, &mut w)?;
        w.flush().map_err(output_err)?;
    }
    let summary = SweepSummary::from_records(cfg.algorithm, cfg.distribution, &records);
    Ok(SweepOutcome { records, summary })
}

/// Shortest representation that parses back to the same value.
fn float_field(v: f64) -> String {
    format!("{v:?}")
}

fn ulp_field(v: Option<u64>) -> String {
    v.map_or_else(|| "NA".to_string(), |u| u.to_string())
}

pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<(), AnalysisError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            float_field(r.a.re),
            float_field(r.a.im),
            float_field(r.x.re),
            float_field(r.x.im),
            r.algorithm.name().to_string(),
            float_field(r.y.re),
            float_field(r.y.im),
            float_field(r.reference.re),
            float_field(r.reference.im),
            float_field(r.relerr.re),
            float_field(r.relerr.im),
            ulp_field(r.ulp.re),
            ulp_field(r.ulp.im),
            r.flags.to_string(),
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
