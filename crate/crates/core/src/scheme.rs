//! Scheme parameters, the sparse signal type and shared scalar helpers.

use std::collections::BTreeMap;

use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Signal alphabet known to the decoder.
#[derive(Debug, Clone, PartialEq)]
pub enum Alphabet {
    /// Nonzero entries take values in a known finite set.
    Discrete(Vec<f64>),
    /// Nonzero entries are arbitrary reals with `|x_i| >= min_amplitude`.
    Arbitrary,
}

/// Which per-bin index code carries the support bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    Repetition,
    RegularLdpc,
}

/// Seeds for every independent pseudorandom source of one scheme instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Seeds {
    pub graph: u64,
    pub column: u64,
    pub code: u64,
    pub noise: u64,
}

/// All dimensions, thresholds and seeds of one scheme instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeParams {
    /// Ambient signal dimension.
    pub n: u64,
    /// Sparsity.
    pub k: usize,
    /// Number of bins.
    pub b: usize,
    /// Bins per signal index.
    pub d: usize,
    /// Index subcode length.
    pub c0: usize,
    /// Sign block length.
    pub c1: usize,
    /// Verification block length.
    pub c2: usize,
    /// Noise variance, assumed known to the decoder.
    pub sigma2: f64,
    /// Threshold slack on the energy tests.
    pub tau: f64,
    pub alphabet: Alphabet,
    pub min_amplitude: f64,
    pub code_kind: CodeKind,
    /// Bit-flipping iteration cap of the LDPC subcode.
    pub max_iters: usize,
    pub seeds: Seeds,
}

pub const DEFAULT_TAU: f64 = 0.5;
pub const DEFAULT_DEGREE: usize = 3;
pub const DEFAULT_MAX_ITERS: usize = 50;

impl SchemeParams {
    /// Parameters following the simulation recipe: `b = 3k`, `d = 3`, a
    /// rate-1/2 LDPC subcode, `c0 = 2L`, `c1 = L`, `c2 = 2L` with
    /// `L = ceil(log2 n)`.
    pub fn recommended(n: u64, k: usize) -> Self {
        let l = info_bits(n);
        SchemeParams {
            n,
            k,
            b: 3 * k.max(1),
            d: DEFAULT_DEGREE,
            c0: 2 * l,
            c1: l,
            c2: 2 * l,
            sigma2: 0.0,
            tau: DEFAULT_TAU,
            alphabet: Alphabet::Arbitrary,
            min_amplitude: 1.0,
            code_kind: CodeKind::RegularLdpc,
            max_iters: DEFAULT_MAX_ITERS,
            seeds: Seeds::default(),
        }
    }

    /// Total column length `c0 + c1 + c2`.
    pub fn c(&self) -> usize {
        self.c0 + self.c1 + self.c2
    }

    /// Number of scalar measurements `b * c`.
    pub fn m(&self) -> usize {
        self.b * self.c()
    }

    /// Number of information bits of the index code.
    pub fn nbits(&self) -> usize {
        info_bits(self.n)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.k < 1 || self.k as u64 > self.n {
            return bad(format!("k = {} must lie in 1..={}", self.k, self.n));
        }
        if self.d < 1 || self.d > self.b {
            return bad(format!("d = {} must lie in 1..={}", self.d, self.b));
        }
        if self.c0 < self.nbits() {
            return bad(format!("c0 = {} is shorter than ceil(log2 n) = {}", self.c0, self.nbits()));
        }
        if self.c1 < 1 || self.c2 < 1 {
            return bad("c1 and c2 must be at least 1".into());
        }
        if !(self.sigma2 >= 0.0) || !self.sigma2.is_finite() {
            return bad(format!("sigma2 = {} must be finite and non-negative", self.sigma2));
        }
        if !(self.tau > 0.0) {
            return bad(format!("tau = {} must be positive", self.tau));
        }
        if !(self.min_amplitude > 0.0) {
            return bad(format!("min_amplitude = {} must be positive", self.min_amplitude));
        }
        if let Alphabet::Discrete(values) = &self.alphabet {
            if values.is_empty() {
                return bad("discrete alphabet is empty".into());
            }
            if values.iter().any(|v| *v == 0.0 || !v.is_finite()) {
                return bad("discrete alphabet must contain finite nonzero values".into());
            }
            let mut sorted = values.clone();
            sorted.sort_by(f64::total_cmp);
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return bad("discrete alphabet values must be distinct".into());
            }
        }
        Ok(())
    }
}

/// `ceil(log2 n)`, with at least one bit.
pub fn info_bits(n: u64) -> usize {
    if n <= 2 {
        1
    } else {
        (64 - (n - 1).leading_zeros()) as usize
    }
}

/// A `k`-sparse vector in `R^n`, stored as a sorted index map.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseSignal {
    n: u64,
    entries: BTreeMap<u64, f64>,
}

impl SparseSignal {
    pub fn new(n: u64) -> Self {
        SparseSignal { n, entries: BTreeMap::new() }
    }

    pub fn from_entries(n: u64, entries: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        let mut signal = SparseSignal::new(n);
        for (i, v) in entries {
            signal.insert(i, v)?;
        }
        Ok(signal)
    }

    /// Sets `x_i = value`. Zero values remove the entry.
    pub fn insert(&mut self, i: u64, value: f64) -> Result<()> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, bound: self.n });
        }
        if value == 0.0 {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, value);
        }
        Ok(())
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, i: u64) -> f64 {
        self.entries.get(&i).copied().unwrap_or(0.0)
    }

    /// Number of nonzero entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, *v))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn squared_norm(&self) -> f64 {
        self.entries.values().map(|v| v * v).sum()
    }

    /// `||self - other||^2` over the union of both supports.
    pub fn squared_distance(&self, other: &SparseSignal) -> f64 {
        let mut total: f64 = self.iter().map(|(i, v)| (v - other.get(i)).powi(2)).sum();
        total += other
            .iter()
            .filter(|(i, _)| !self.entries.contains_key(i))
            .map(|(_, v)| v * v)
            .sum::<f64>();
        total
    }

    pub fn same_support(&self, other: &SparseSignal) -> bool {
        self.entries.len() == other.entries.len() && self.support().eq(other.support())
    }
}

/// `+1` for `x >= 0`, `-1` otherwise.
pub fn sgn(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// MSB-first binary expansion of `i` on `nbits` bits with `0 -> +1`, `1 -> -1`.
pub fn index_bits(i: u64, nbits: usize) -> Result<Vec<f64>> {
    if nbits < 64 && i >> nbits != 0 {
        return Err(Error::IndexOutOfRange { index: i, bound: 1u64 << nbits });
    }
    Ok((0..nbits)
        .rev()
        .map(|shift| if shift < 64 && (i >> shift) & 1 == 1 { -1.0 } else { 1.0 })
        .collect())
}

/// Inverse of [`index_bits`]: any negative entry reads as bit 1.
pub fn bits_index(v: &[f64]) -> u64 {
    v.iter().fold(0u64, |acc, &s| (acc << 1) | u64::from(s < 0.0))
}

/// Upper tail probability of the standard normal distribution.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sgn_examples() {
        assert_eq!(sgn(3.2), 1.0);
        assert_eq!(sgn(0.0), 1.0);
        assert_eq!(sgn(-0.5), -1.0);
    }

    #[test]
    fn index_bits_examples() {
        assert_eq!(index_bits(2, 3).unwrap(), vec![1.0, -1.0, 1.0]);
        assert_eq!(index_bits(0, 4).unwrap(), vec![1.0; 4]);
        assert_eq!(index_bits(7, 3).unwrap(), vec![-1.0; 3]);
        assert!(matches!(index_bits(8, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn bits_index_examples() {
        assert_eq!(bits_index(&[1.0, -1.0, 1.0]), 2);
        assert_eq!(bits_index(&[1.0, 1.0]), 0);
        assert_eq!(bits_index(&[-1.0, -1.0, -1.0]), 7);
    }

    #[test]
    fn index_bits_round_trip_exhaustive() {
        for nbits in 1..=12 {
            for i in 0..(1u64 << nbits) {
                let v = index_bits(i, nbits).unwrap();
                assert_eq!(v.len(), nbits);
                assert_eq!(bits_index(&v), i);
            }
        }
    }

    #[test]
    fn q_function_examples() {
        assert_eq!(q_function(0.0), 0.5);
        assert!(q_function(40.0) < 1e-300);
        // Frozen from Simpson quadrature of the normal density (see tests/oracles.rs).
        assert!((q_function(1.0) - 0.158_655_253_931_457).abs() < 1e-6);
    }

    #[test]
    fn q_function_symmetry() {
        let mut x = -6.0;
        while x <= 6.0 {
            assert!((q_function(x) + q_function(-x) - 1.0).abs() < 1e-12, "x = {x}");
            x += 0.01;
        }
    }

    #[test]
    fn info_bits_values() {
        assert_eq!(info_bits(1), 1);
        assert_eq!(info_bits(2), 1);
        assert_eq!(info_bits(3), 2);
        assert_eq!(info_bits(64), 6);
        assert_eq!(info_bits(65), 7);
        assert_eq!(info_bits(1 << 16), 16);
        assert_eq!(info_bits(10_000_000_000), 34);
    }

    #[test]
    fn validate_rejects_bad_alphabets() {
        let mut p = SchemeParams::recommended(64, 4);
        p.validate().unwrap();
        p.alphabet = Alphabet::Discrete(vec![]);
        assert!(p.validate().is_err());
        p.alphabet = Alphabet::Discrete(vec![1.0, 0.0]);
        assert!(p.validate().is_err());
        p.alphabet = Alphabet::Discrete(vec![1.0, 2.0, 1.0]);
        assert!(p.validate().is_err());
        p.alphabet = Alphabet::Discrete(vec![-1.0, 1.0]);
        p.validate().unwrap();
        p.c0 = 5;
        assert!(p.validate().is_err());
    }

    #[test]
    fn sparse_signal_drops_zeros() {
        let mut x = SparseSignal::new(10);
        x.insert(3, 2.0).unwrap();
        x.insert(4, 0.0).unwrap();
        assert_eq!(x.len(), 1);
        x.insert(3, 0.0).unwrap();
        assert!(x.is_empty());
        assert!(x.insert(10, 1.0).is_err());
    }

    #[test]
    fn squared_distance_covers_both_supports() {
        let a = SparseSignal::from_entries(8, [(1, 1.0), (2, 2.0)]).unwrap();
        let b = SparseSignal::from_entries(8, [(2, 1.0), (5, 3.0)]).unwrap();
        assert_eq!(a.squared_distance(&b), 1.0 + 1.0 + 9.0);
        assert!(!a.same_support(&b));
    }
}
