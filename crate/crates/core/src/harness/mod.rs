//! Monte-Carlo experiments: signal sampling, single trials, SNR sweeps and
//! the graph/error analyses behind the CLI.

mod analysis;
mod config;

pub use analysis::{analyze_errors, analyze_graph, ErrorRow, GraphRow, ERROR_CSV_HEADER, GRAPH_CSV_HEADER};
pub use config::{snr_db_to_sigma2, AmplitudeDist, ExperimentConfig, DEFAULT_SNR_GRID_DB};

use std::io::Write;
use std::time::Instant;

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;

use crate::columns::{ColumnGenerator, MeasurementSet, NoiseModel};
use crate::decoder::DecodeResult;
use crate::error::Result;
use crate::graph::BinHasher;
use crate::instance::Instance;
use crate::prf::{keyed_rng, Domain};
use crate::scheme::{SchemeParams, SparseSignal};
use crate::subcode::IndexCodec;

pub const RESULTS_CSV_HEADER: &str = "trial,snr_db,n,k,support_ok,relative_mse,iterations,singleton_tests,decode_seconds";

/// Draws `k` distinct indices from `support_seed` and assigns them the
/// level's fixed amplitudes.
pub fn sample_signal(config: &ExperimentConfig, support_seed: u64) -> SparseSignal {
    let n = config.scheme.n;
    let k = config.scheme.k;
    let mut rng = keyed_rng(support_seed, Domain::Signal, 0);
    let mut support: Vec<u64> = index::sample(&mut rng, n as usize, k).into_iter().map(|i| i as u64).collect();
    support.sort_unstable();
    let values = level_amplitudes(config);
    let mut signal = SparseSignal::new(n);
    for (i, v) in support.into_iter().zip(values) {
        signal.insert(i, v).expect("sampled index is below n");
    }
    signal
}

/// The `k` nonzero values shared by every trial of a sparsity level.
pub fn level_amplitudes(config: &ExperimentConfig) -> Vec<f64> {
    let mut rng = keyed_rng(config.amplitude_seed(), Domain::Signal, 1);
    (0..config.scheme.k)
        .map(|_| match &config.amplitude {
            AmplitudeDist::Uniform { lo, hi } => {
                let magnitude = if lo == hi { *lo } else { rng.random_range(*lo..=*hi) };
                if rng.random_bool(0.5) {
                    magnitude
                } else {
                    -magnitude
                }
            }
            AmplitudeDist::Alphabet(values) => values[rng.random_range(0..values.len())],
        })
        .collect()
}

/// Outcome of one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub snr_db: f64,
    pub n: u64,
    pub k: usize,
    pub support_ok: bool,
    /// `||x - x^||^2 / ||x||^2`, only when the support was recovered.
    pub relative_mse: Option<f64>,
    pub iterations: usize,
    pub singleton_tests: usize,
    pub decode_seconds: f64,
}

impl TrialRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{:.6e}",
            self.trial,
            self.snr_db,
            self.n,
            self.k,
            self.support_ok,
            self.relative_mse.map(|v| format!("{v:e}")).unwrap_or_default(),
            self.iterations,
            self.singleton_tests,
            self.decode_seconds
        )
    }
}

/// Everything one trial produced, for callers that need more than the record.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub params: SchemeParams,
    pub signal: SparseSignal,
    pub measurements: MeasurementSet,
    pub decoded: DecodeResult,
    pub hasher: BinHasher,
    pub generator: ColumnGenerator,
    pub noise: NoiseModel,
    pub record: TrialRecord,
}

/// A configuration with its level-wide index code built once.
#[derive(Debug, Clone)]
pub struct Experiment {
    config: ExperimentConfig,
    codec: IndexCodec,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let s = &config.scheme;
        let codec = IndexCodec::new(s.n, s.c0, s.code_kind, config.code_seed(), s.max_iters)?;
        Ok(Experiment { config, codec })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn codec(&self) -> &IndexCodec {
        &self.codec
    }

    /// Sample, measure, decode and score one trial.
    pub fn run_trial_detailed(&self, trial: usize, snr_db: f64, trial_seed: u64) -> Result<TrialOutcome> {
        let params = self.config.trial_params(snr_db, trial_seed);
        let signal = sample_signal(&self.config, trial_seed);
        let instance = Instance::with_codec(params.clone(), self.codec.clone());
        let measurements = instance.measure(&signal)?;

        let start = Instant::now();
        let decoded = instance.decode(&measurements)?;
        let decode_seconds = start.elapsed().as_secs_f64();
        let noise = instance.noise();
        let Instance { hasher, generator, .. } = instance;

        let support_ok = decoded.estimate.same_support(&signal);
        let relative_mse = support_ok.then(|| decoded.estimate.squared_distance(&signal) / signal.squared_norm());
        let record = TrialRecord {
            trial,
            snr_db,
            n: params.n,
            k: params.k,
            support_ok,
            relative_mse,
            iterations: decoded.iterations,
            singleton_tests: decoded.singleton_tests,
            decode_seconds,
        };
        Ok(TrialOutcome { params, signal, measurements, decoded, hasher, generator, noise, record })
    }

    pub fn run_trial(&self, trial: usize, snr_db: f64, trial_seed: u64) -> Result<TrialRecord> {
        Ok(self.run_trial_detailed(trial, snr_db, trial_seed)?.record)
    }

    /// All trials at every SNR point, in parallel, sorted by `(snr, trial)`.
    pub fn sweep(&self) -> Result<Vec<TrialRecord>> {
        let jobs: Vec<(usize, f64, usize)> = self
            .config
            .snr_db
            .iter()
            .enumerate()
            .flat_map(|(s, &snr)| (0..self.config.trials).map(move |t| (s, snr, t)))
            .collect();
        let mut records: Vec<(usize, TrialRecord)> = jobs
            .into_par_iter()
            .map(|(s, snr, t)| Ok((s, self.run_trial(t, snr, self.config.trial_seed(s, t))?)))
            .collect::<Result<_>>()?;
        records.sort_by_key(|(s, r)| (*s, r.trial));
        Ok(records.into_iter().map(|(_, r)| r).collect())
    }
}

/// One trial of `config` at `snr_db`, seeded by `trial_seed`.
pub fn run_trial(config: &ExperimentConfig, snr_db: f64, trial_seed: u64) -> Result<TrialRecord> {
    Experiment::new(config.clone())?.run_trial(0, snr_db, trial_seed)
}

/// Runs the full sweep and writes the results CSV to `out`.
pub fn sweep(config: &ExperimentConfig, out: &mut impl Write) -> Result<Vec<SnrSummary>> {
    let records = Experiment::new(config.clone())?.sweep()?;
    write_results_csv(&records, out)?;
    Ok(summarize(&records))
}

pub fn write_results_csv(records: &[TrialRecord], out: &mut impl Write) -> Result<()> {
    writeln!(out, "{RESULTS_CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

/// Per-SNR aggregate of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrSummary {
    pub snr_db: f64,
    pub trials: usize,
    pub support_errors: usize,
    /// Mean relative MSE over trials with correct support, if any.
    pub mean_relative_mse: Option<f64>,
    pub mean_decode_seconds: f64,
}

impl SnrSummary {
    pub fn support_error_rate(&self) -> f64 {
        self.support_errors as f64 / self.trials as f64
    }

    /// Binomial standard error of the support error rate.
    pub fn support_error_se(&self) -> f64 {
        let p = self.support_error_rate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

/// Groups records by SNR, preserving first-seen order.
pub fn summarize(records: &[TrialRecord]) -> Vec<SnrSummary> {
    let mut order: Vec<f64> = Vec::new();
    for r in records {
        if !order.contains(&r.snr_db) {
            order.push(r.snr_db);
        }
    }
    order
        .into_iter()
        .map(|snr| {
            let group: Vec<&TrialRecord> = records.iter().filter(|r| r.snr_db == snr).collect();
            let mses: Vec<f64> = group.iter().filter_map(|r| r.relative_mse).collect();
            SnrSummary {
                snr_db: snr,
                trials: group.len(),
                support_errors: group.iter().filter(|r| !r.support_ok).count(),
                mean_relative_mse: (!mses.is_empty()).then(|| mses.iter().sum::<f64>() / mses.len() as f64),
                mean_decode_seconds: group.iter().map(|r| r.decode_seconds).sum::<f64>() / group.len() as f64,
            }
        })
        .collect()
}
