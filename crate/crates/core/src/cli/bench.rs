use std::hint::black_box;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::analysis::{sample_inputs, AnalysisError, Distribution, SweepAlgorithm};
use crate::kernels::{self, ComplexValue};

/// Checksums of different kernels must agree to this fraction of the summed
/// result magnitudes.
pub const CHECKSUM_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub batch: usize,
    pub reps: usize,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algorithm: SweepAlgorithm,
    pub rep: usize,
    pub ns_per_op: f64,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Per algorithm: (sum of result components, sum of their magnitudes).
    pub checksums: Vec<(SweepAlgorithm, f64, f64)>,
}

impl BenchReport {
    /// (min, median) ns per division.
    pub fn stats(&self, alg: SweepAlgorithm) -> (f64, f64) {
        let mut v: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.algorithm == alg)
            .map(|r| r.ns_per_op)
            .collect();
        v.sort_by(f64::total_cmp);
        (v[0], v[v.len() / 2])
    }

    pub fn checksum(&self, alg: SweepAlgorithm) -> f64 {
        self.checksums
            .iter()
            .find(|c| c.0 == alg)
            .map_or(f64::NAN, |c| c.1)
    }

    pub fn checksums_agree(&self) -> bool {
        let (_, base, scale) = self.checksums[0];
        self.checksums.iter().all(|&(_, sum, _)| {
            (sum - base).abs() <= CHECKSUM_TOLERANCE * scale.max(f64::MIN_POSITIVE)
        })
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), AnalysisError> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["alg", "rep", "ns_per_op"])?;
        for r in &self.rows {
            w.write_record([
                r.algorithm.name().to_string(),
                r.rep.to_string(),
                format!("{:?}", r.ns_per_op),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Sum of all result components, plus the sum of their magnitudes.
fn divide_batch(
    alg: SweepAlgorithm,
    inputs: &[(ComplexValue<f64>, ComplexValue<f64>)],
) -> (f64, f64) {
    let mut sum = 0.0;
    let mut scale = 0.0;
    let mut take = |y: ComplexValue<f64>| {
        let y = black_box(y);
        sum += y.re + y.im;
        scale += y.re.abs() + y.im.abs();
    };
    match alg {
        SweepAlgorithm::Naive => inputs
            .iter()
            .for_each(|(a, x)| take(kernels::divide_naive(a, x).unwrap_or_default())),
        SweepAlgorithm::Fast => inputs
            .iter()
            .for_each(|(a, x)| take(kernels::divide_fast(a, x).unwrap_or_default())),
        // preparation sits inside the timed loop so all kernels see the same pairs
        SweepAlgorithm::Prepared => inputs.iter().for_each(|(a, x)| {
            take(
                kernels::prepare_denominator(x)
                    .map(|d| kernels::divide_prepared(a, &d))
                    .unwrap_or_default(),
            )
        }),
        SweepAlgorithm::Smith => inputs
            .iter()
            .for_each(|(a, x)| take(kernels::divide_smith(a, x).unwrap_or_default())),
    }
    (sum, scale)
}

/// Times every float division kernel on the same well-scaled batch.
pub fn run_bench(cfg: &BenchConfig) -> BenchReport {
    let inputs = sample_inputs(Distribution::WellScaled, cfg.batch, cfg.seed);
    let mut rows = Vec::with_capacity(SweepAlgorithm::ALL.len() * cfg.reps);
    let mut checksums = Vec::new();
    for alg in SweepAlgorithm::ALL {
        let mut last = (0.0, 0.0);
        for rep in 0..cfg.reps {
            let start = Instant::now();
            last = divide_batch(alg, black_box(&inputs));
            let elapsed = start.elapsed().as_nanos().max(1) as f64;
            rows.push(BenchRow {
                algorithm: alg,
                rep,
                ns_per_op: elapsed / cfg.batch as f64,
            });
        }
        checksums.push((alg, last.0, last.1));
    }
    BenchReport { rows, checksums }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench_shape() {
        let report = run_bench(&BenchConfig {
            batch: 1000,
            reps: 3,
            output_path: None,
            seed: 1,
        });
        assert_eq!(report.rows.len(), 12);
        assert!(report.rows.iter().all(|r| r.ns_per_op > 0.0));
        assert!(report.checksums_agree());
    }
}
