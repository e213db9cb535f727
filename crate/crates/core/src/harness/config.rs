//! Experiment configuration and its TOML file format.
//!
//! ```toml
//! n = 10000000000
//! k = 100
//! b = 300
//! d = 3
//! c0 = 68
//! c1 = 34
//! c2 = 68
//! tau = 0.5
//! snr_db = [0, 5, 10, 15, 20, 25, 30]
//! trials = 200
//! min_amplitude = 1.0
//! out = "results.csv"
//!
//! [alphabet]
//! mode = "arbitrary"      # or "discrete", with `values = [...]`
//!
//! [amplitude]
//! lo = 1.0
//! hi = 10.0
//!
//! [code]
//! kind = "ldpc"           # or "repetition"
//! rate = 0.5
//! max_iters = 50
//!
//! [seeds]
//! master = 1
//! ```
//!
//! Omitted dimensions follow the recommended recipe: `b = 3k`, `d = 3`,
//! `c0 = ceil(log2 n) / rate`, `c1 = ceil(log2 n)`, `c2 = 2 ceil(log2 n)`.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::prf::derive_seed;
use crate::scheme::{info_bits, Alphabet, CodeKind, SchemeParams, Seeds, DEFAULT_DEGREE, DEFAULT_MAX_ITERS, DEFAULT_TAU};

pub const DEFAULT_SNR_GRID_DB: [f64; 7] = [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0];
pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_CODE_RATE: f64 = 0.5;

/// Distribution of the nonzero entries of sampled signals.
#[derive(Debug, Clone, PartialEq)]
pub enum AmplitudeDist {
    /// Magnitude uniform on `[lo, hi]`, sign uniform.
    Uniform { lo: f64, hi: f64 },
    /// Uniform over the listed values (signs included).
    Alphabet(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Dimensions, thresholds and alphabet. `sigma2` and the per-trial seeds
    /// are filled in for every trial.
    pub scheme: SchemeParams,
    pub code_rate: f64,
    pub snr_db: Vec<f64>,
    pub trials: usize,
    pub amplitude: AmplitudeDist,
    pub master_seed: u64,
    pub out: Option<PathBuf>,
}

/// Seed-derivation tags.
const TAG_CODE: u64 = 0xc0de;
const TAG_AMPLITUDE: u64 = 0xa3b1;

impl ExperimentConfig {
    /// Recommended parameters with arbitrary amplitudes uniform on `[1, 10]`.
    pub fn recommended(n: u64, k: usize) -> Self {
        let mut scheme = SchemeParams::recommended(n, k);
        scheme.min_amplitude = 1.0;
        ExperimentConfig {
            scheme,
            code_rate: DEFAULT_CODE_RATE,
            snr_db: DEFAULT_SNR_GRID_DB.to_vec(),
            trials: DEFAULT_TRIALS,
            amplitude: AmplitudeDist::Uniform { lo: 1.0, hi: 10.0 },
            master_seed: 1,
            out: None,
        }
    }

    /// Switches to the discrete alphabet `values`, which also becomes the
    /// sampling distribution.
    pub fn with_discrete_alphabet(mut self, values: Vec<f64>) -> Self {
        self.scheme.min_amplitude = values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        self.scheme.alphabet = Alphabet::Discrete(values.clone());
        self.amplitude = AmplitudeDist::Alphabet(values);
        self
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        file.into_config()
    }

    /// Seed of the index code, fixed per sparsity level.
    pub fn code_seed(&self) -> u64 {
        derive_seed(&[self.master_seed, self.scheme.k as u64, TAG_CODE])
    }

    /// Seed of the nonzero amplitudes, fixed per sparsity level.
    pub fn amplitude_seed(&self) -> u64 {
        derive_seed(&[self.master_seed, self.scheme.k as u64, TAG_AMPLITUDE])
    }

    /// Seed of trial `trial` at SNR grid point `snr_index`.
    pub fn trial_seed(&self, snr_index: usize, trial: usize) -> u64 {
        derive_seed(&[self.master_seed, self.scheme.k as u64, snr_index as u64, trial as u64])
    }

    /// Scheme parameters of one trial.
    pub fn trial_params(&self, snr_db: f64, trial_seed: u64) -> SchemeParams {
        let mut p = self.scheme.clone();
        p.sigma2 = snr_db_to_sigma2(snr_db);
        p.seeds = Seeds {
            graph: derive_seed(&[trial_seed, 1]),
            column: derive_seed(&[trial_seed, 2]),
            code: self.code_seed(),
            noise: derive_seed(&[trial_seed, 3]),
        };
        p
    }

    pub fn validate(&self) -> Result<()> {
        self.scheme.validate()?;
        if self.trials < 1 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.snr_db.is_empty() {
            return Err(Error::Config("snr_db must list at least one value".into()));
        }
        if self.snr_db.iter().any(|s| s.is_nan()) {
            return Err(Error::Config("snr_db values must be numbers".into()));
        }
        match &self.amplitude {
            AmplitudeDist::Uniform { lo, hi } => {
                if !(lo <= hi) || *lo < self.scheme.min_amplitude {
                    return Err(Error::Config(format!(
                        "amplitude range [{lo}, {hi}] must be ordered and respect min_amplitude = {}",
                        self.scheme.min_amplitude
                    )));
                }
            }
            AmplitudeDist::Alphabet(values) => {
                if values.iter().any(|v| v.abs() < self.scheme.min_amplitude) {
                    return Err(Error::Config("alphabet value below min_amplitude".into()));
                }
            }
        }
        Ok(())
    }
}

/// `SNR = 1 / sigma^2`.
pub fn snr_db_to_sigma2(snr_db: f64) -> f64 {
    10f64.powf(-snr_db / 10.0)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: u64,
    k: usize,
    b: Option<usize>,
    d: Option<usize>,
    c0: Option<usize>,
    c1: Option<usize>,
    c2: Option<usize>,
    tau: Option<f64>,
    snr_db: Option<Vec<f64>>,
    trials: Option<usize>,
    min_amplitude: Option<f64>,
    out: Option<PathBuf>,
    alphabet: Option<AlphabetSection>,
    amplitude: Option<AmplitudeSection>,
    code: Option<CodeSection>,
    seeds: Option<SeedSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphabetSection {
    mode: AlphabetMode,
    values: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum AlphabetMode {
    Discrete,
    Arbitrary,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmplitudeSection {
    lo: f64,
    hi: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeSection {
    kind: Option<CodeKindName>,
    rate: Option<f64>,
    max_iters: Option<usize>,
}

#[derive(Debug, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum CodeKindName {
    Repetition,
    Ldpc,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeedSection {
    master: u64,
}

impl ConfigFile {
    fn into_config(self) -> Result<ExperimentConfig> {
        let l = info_bits(self.n);
        let code = self.code.unwrap_or(CodeSection { kind: None, rate: None, max_iters: None });
        let rate = code.rate.unwrap_or(DEFAULT_CODE_RATE);
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::Config(format!("code.rate = {rate} must lie in (0, 1]")));
        }
        let code_kind = match code.kind.unwrap_or(CodeKindName::Ldpc) {
            CodeKindName::Repetition => CodeKind::Repetition,
            CodeKindName::Ldpc => CodeKind::RegularLdpc,
        };

        let mode = self.alphabet.as_ref().map_or(AlphabetMode::Arbitrary, |a| a.mode);
        let (alphabet, amplitude) = match mode {
            AlphabetMode::Discrete => {
                if self.amplitude.is_some() {
                    return Err(Error::Config("amplitude.lo/hi only apply to the arbitrary alphabet".into()));
                }
                let values = self
                    .alphabet
                    .and_then(|a| a.values)
                    .ok_or_else(|| Error::Config("alphabet.values is required for the discrete alphabet".into()))?;
                (Alphabet::Discrete(values.clone()), AmplitudeDist::Alphabet(values))
            }
            AlphabetMode::Arbitrary => {
                if self.alphabet.as_ref().is_some_and(|a| a.values.is_some()) {
                    return Err(Error::Config("alphabet.values only applies to the discrete alphabet".into()));
                }
                let (lo, hi) = self.amplitude.map_or((1.0, 10.0), |a| (a.lo, a.hi));
                (Alphabet::Arbitrary, AmplitudeDist::Uniform { lo, hi })
            }
        };
        let min_amplitude = self.min_amplitude.unwrap_or(match &amplitude {
            AmplitudeDist::Uniform { lo, .. } => *lo,
            AmplitudeDist::Alphabet(values) => values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs())),
        });

        let scheme = SchemeParams {
            n: self.n,
            k: self.k,
            b: self.b.unwrap_or(3 * self.k),
            d: self.d.unwrap_or(DEFAULT_DEGREE),
            c0: self.c0.unwrap_or((l as f64 / rate).ceil() as usize),
            c1: self.c1.unwrap_or(l),
            c2: self.c2.unwrap_or(2 * l),
            sigma2: 0.0,
            tau: self.tau.unwrap_or(DEFAULT_TAU),
            alphabet,
            min_amplitude,
            code_kind,
            max_iters: code.max_iters.unwrap_or(DEFAULT_MAX_ITERS),
            seeds: Seeds::default(),
        };
        let config = ExperimentConfig {
            scheme,
            code_rate: rate,
            snr_db: self.snr_db.unwrap_or_else(|| DEFAULT_SNR_GRID_DB.to_vec()),
            trials: self.trials.unwrap_or(DEFAULT_TRIALS),
            amplitude,
            master_seed: self.seeds.map_or(1, |s| s.master),
            out: self.out,
        };
        config.validate()?;
        Ok(config)
    }
}
