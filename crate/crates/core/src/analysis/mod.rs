//! Verification and measurement harness: exact equivalence suites,
//! operation counts, accuracy sweeps against a correctly rounded oracle.

mod count;
mod equivalence;
mod oracle;
mod probe;
mod rng;
mod sweep;

use thiserror::Error;

use crate::kernels::KernelError;

pub use count::{expected_tally, run_count, run_count_on, CountAlgorithm, CountReport};
pub use equivalence::{
    run_equivalence, Counterexample, EquivalenceConfig, EquivalenceSummary, FastKernel,
    IdentityResult,
};
pub use oracle::{oracle_divide, OracleQuotient};
pub use probe::{ProbeLog, ProbeScalar};
pub use rng::{SampleStream, PCG_STREAM};
pub use sweep::{
    classify_flags, evaluate, run_sweep, sample_inputs, write_csv, ComponentStats, Distribution,
    FlagInputs, FlagSet, SweepAlgorithm, SweepConfig, SweepOutcome, SweepRecord, SweepSummary,
    CSV_HEADER, GRID_HALF_WIDTH,
};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("unknown distribution `{0}` (expected wellscaled, extreme or grid)")]
    UnknownDistribution(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("non-finite input")]
    NonFiniteInput,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
