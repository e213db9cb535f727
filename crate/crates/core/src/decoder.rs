//! Singleton test and peeling recovery.
//!
//! Every bin is classified as a zeroton, singleton or multiton from its own
//! `c` measurements. Singletons reveal one `(index, value)` pair, whose
//! contribution is then subtracted from the index's other bins, possibly
//! turning multitons into new singletons. Work after the first pass is
//! confined to the bins of recovered indices, so the total cost is
//! `O((b + k d) c)` regardless of `n`.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::columns::{BinMeasurement, ColumnGenerator, MeasurementSet};
use crate::error::Result;
use crate::graph::BinHasher;
use crate::scheme::{sgn, Alphabet, SchemeParams, SparseSignal};

/// Absolute slack added to both energy thresholds, per verification entry.
/// Lets noiseless bins with exactly zero residual pass the tests.
pub const ENERGY_EPS_PER_ENTRY: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingletonTestResult {
    Zeroton,
    Singleton {
        index: u64,
        value: f64,
        /// Sign estimate from the all-ones block.
        sign: f64,
        /// Least-squares amplitude on the verification block.
        point_estimate: f64,
    },
    Multiton,
}

/// One recovered entry, in recovery order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    /// Peeling generation: 1 for the initial pass, `t + 1` for entries
    /// exposed by peeling a generation-`t` entry.
    pub iteration: usize,
    pub index: u64,
    /// Bin the entry was recovered from.
    pub bin: usize,
    pub value: f64,
}

/// Subtraction of a recovered entry's estimate from one of its bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeelEvent {
    pub index: u64,
    pub bin: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub estimate: SparseSignal,
    /// Number of peeling generations.
    pub iterations: usize,
    pub trace: Vec<TraceEntry>,
    /// Subtractions in the order they were applied.
    pub peels: Vec<PeelEvent>,
    /// Bins still classified as multitons when peeling stopped.
    pub unresolved_bins: usize,
    pub singleton_tests: usize,
}

fn energy(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn residual_energy(y: &[f64], z: f64, g: &[f64]) -> f64 {
    y.iter().zip(g).map(|(y, g)| (y - z * g).powi(2)).sum()
}

/// True if the verification block carries no more energy than noise alone.
pub fn zeroton_test(bin: &BinMeasurement, params: &SchemeParams) -> bool {
    let c2 = params.c2 as f64;
    energy(bin.dot()) <= c2 * (1.0 + params.tau) * params.sigma2 + ENERGY_EPS_PER_ENTRY * c2
}

/// Alphabet value minimizing `||y. - z g.||^2`; ties go to the smaller value.
pub fn estimate_value_discrete(y_dot: &[f64], g_dot: &[f64], alphabet: &[f64]) -> f64 {
    let mut sorted = alphabet.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut best = (f64::INFINITY, sorted[0]);
    for z in sorted {
        let r = residual_energy(y_dot, z, g_dot);
        if r < best.0 {
            best = (r, z);
        }
    }
    best.1
}

pub fn singleton_test(
    bin: &BinMeasurement,
    params: &SchemeParams,
    gen: &ColumnGenerator,
    hasher: &BinHasher,
    bin_index: usize,
) -> SingletonTestResult {
    if zeroton_test(bin, params) {
        return SingletonTestResult::Zeroton;
    }

    let sign = sgn(bin.bar().iter().sum());
    let hard: Vec<f64> = bin.tilde().iter().map(|&y| sgn(sign * y)).collect();
    let Ok(index) = gen.codec().decode(&hard) else {
        return SingletonTestResult::Multiton;
    };

    let c2 = params.c2 as f64;
    let g_dot = gen.rademacher(index);
    let point_estimate = dot(&g_dot, bin.dot()) / c2;
    let threshold = (c2 - 1.0) * (1.0 + params.tau) * params.sigma2 + ENERGY_EPS_PER_ENTRY * c2;
    if residual_energy(bin.dot(), point_estimate, &g_dot) > threshold || !hasher.contains(bin_index, index) {
        return SingletonTestResult::Multiton;
    }

    let value = match &params.alphabet {
        Alphabet::Arbitrary => {
            // Index is < n after a successful decode.
            let g = gen.column(index).expect("decoded index is in range");
            dot(&g, bin.values()) / gen.c() as f64
        }
        Alphabet::Discrete(values) => estimate_value_discrete(bin.dot(), &g_dot, values),
    };
    SingletonTestResult::Singleton { index, value, sign, point_estimate }
}

struct PeelState {
    n: u64,
    removed: Vec<bool>,
    recovered: HashMap<u64, (f64, usize)>,
    trace: Vec<TraceEntry>,
    worklist: VecDeque<u64>,
}

impl PeelState {
    /// Removes a bin that tested as a singleton and queues its index unless
    /// it was already recovered elsewhere.
    fn accept(&mut self, bin: usize, result: SingletonTestResult, iteration: usize) {
        let SingletonTestResult::Singleton { index, value, .. } = result else { return };
        debug_assert!(index < self.n);
        self.removed[bin] = true;
        if self.recovered.contains_key(&index) {
            return;
        }
        self.recovered.insert(index, (value, iteration));
        self.trace.push(TraceEntry { iteration, index, bin, value });
        self.worklist.push_back(index);
    }
}

/// Peeling recovery with a FIFO worklist.
pub fn peel_decode(
    meas: &MeasurementSet,
    params: &SchemeParams,
    gen: &ColumnGenerator,
    hasher: &BinHasher,
) -> Result<DecodeResult> {
    let b = meas.len();
    let mut bins = meas.bins.clone();
    let mut last: Vec<SingletonTestResult> = bins
        .par_iter()
        .enumerate()
        .map(|(j, bin)| singleton_test(bin, params, gen, hasher, j))
        .collect();
    let mut singleton_tests = b;

    let mut state = PeelState {
        n: params.n,
        removed: vec![false; b],
        recovered: HashMap::new(),
        trace: Vec::new(),
        worklist: VecDeque::new(),
    };
    for (j, &result) in last.iter().enumerate() {
        state.accept(j, result, 1);
    }

    let mut peels = Vec::new();
    while let Some(i) = state.worklist.pop_front() {
        let (value, iteration) = state.recovered[&i];
        let column = gen.column(i)?;
        for j in hasher.bins_of(i) {
            if state.removed[j] {
                continue;
            }
            bins[j].subtract_scaled(value, &column);
            peels.push(PeelEvent { index: i, bin: j });
            last[j] = singleton_test(&bins[j], params, gen, hasher, j);
            singleton_tests += 1;
            state.accept(j, last[j], iteration + 1);
        }
    }

    let unresolved_bins = (0..b)
        .filter(|&j| !state.removed[j] && last[j] == SingletonTestResult::Multiton)
        .count();
    let iterations = state.trace.iter().map(|t| t.iteration).max().unwrap_or(0);
    let estimate = SparseSignal::from_entries(params.n, state.trace.iter().map(|t| (t.index, t.value)))?;
    Ok(DecodeResult { estimate, iterations, trace: state.trace, peels, unresolved_bins, singleton_tests })
}
