//! Per-bin index code.
//!
//! The first `c0` entries of every column carry the binary expansion of the
//! column index, protected by a short error-control code. After sign
//! compensation the decoder sees these entries through a binary symmetric
//! channel, so only hard-decision decoding is needed.

mod ldpc;

pub use ldpc::RegularLdpcCode;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::scheme::{index_bits, info_bits, q_function, CodeKind};

/// The observation did not decode to a valid index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("index decoding failed")]
pub struct DecodeFailure;

#[derive(Debug, Clone)]
enum Inner {
    Repetition,
    Ldpc(RegularLdpcCode),
}

/// Encoder/decoder between indices `0..n` and `±1` words of length `c0`.
#[derive(Debug, Clone)]
pub struct IndexCodec {
    n: u64,
    nbits: usize,
    c0: usize,
    inner: Inner,
}

impl IndexCodec {
    pub fn new(n: u64, c0: usize, kind: CodeKind, code_seed: u64, max_iters: usize) -> Result<Self> {
        let nbits = info_bits(n);
        if c0 < nbits {
            return Err(Error::InvalidParams(format!("c0 = {c0} is shorter than {nbits} index bits")));
        }
        let inner = match kind {
            CodeKind::Repetition => Inner::Repetition,
            CodeKind::RegularLdpc => Inner::Ldpc(RegularLdpcCode::random(c0, nbits, code_seed, max_iters)?),
        };
        Ok(IndexCodec { n, nbits, c0, inner })
    }

    pub fn repetition(n: u64, c0: usize) -> Result<Self> {
        Self::new(n, c0, CodeKind::Repetition, 0, 0)
    }

    pub fn nbits(&self) -> usize {
        self.nbits
    }

    pub fn c0(&self) -> usize {
        self.c0
    }

    pub fn rate(&self) -> f64 {
        self.nbits as f64 / self.c0 as f64
    }

    pub fn kind(&self) -> CodeKind {
        match self.inner {
            Inner::Repetition => CodeKind::Repetition,
            Inner::Ldpc(_) => CodeKind::RegularLdpc,
        }
    }

    pub fn ldpc(&self) -> Option<&RegularLdpcCode> {
        match &self.inner {
            Inner::Ldpc(code) => Some(code),
            Inner::Repetition => None,
        }
    }

    /// Codeword of index `i` as `±1` entries (`0 -> +1`, `1 -> -1`).
    pub fn encode(&self, i: u64) -> Result<Vec<f64>> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, bound: self.n });
        }
        let symbols = index_bits(i, self.nbits)?;
        Ok(match &self.inner {
            Inner::Repetition => {
                let mut word = vec![0.0; self.c0];
                for (t, &s) in symbols.iter().enumerate() {
                    word[self.group(t)].fill(s);
                }
                word
            }
            Inner::Ldpc(code) => {
                let message: Vec<bool> = symbols.iter().map(|&s| s < 0.0).collect();
                code.encode(&message).into_iter().map(|bit| if bit { -1.0 } else { 1.0 }).collect()
            }
        })
    }

    /// Recovers the index from a hard-decision observation. Negative entries
    /// read as bit 1.
    pub fn decode(&self, obs: &[f64]) -> Result<u64, DecodeFailure> {
        assert_eq!(obs.len(), self.c0, "observation length");
        let bits: Vec<bool> = match &self.inner {
            Inner::Repetition => (0..self.nbits)
                .map(|t| {
                    let votes: i64 = obs[self.group(t)].iter().map(|&s| if s < 0.0 { 1 } else { -1 }).sum();
                    votes > 0
                })
                .collect(),
            Inner::Ldpc(code) => {
                let hard: Vec<bool> = obs.iter().map(|&s| s < 0.0).collect();
                code.decode(&hard).ok_or(DecodeFailure)?
            }
        };
        let index = bits.iter().fold(0u64, |acc, &b| (acc << 1) | u64::from(b));
        if index < self.n {
            Ok(index)
        } else {
            Err(DecodeFailure)
        }
    }

    /// Codeword positions of repetition symbol `t`.
    fn group(&self, t: usize) -> std::ops::Range<usize> {
        (t * self.c0 / self.nbits)..((t + 1) * self.c0 / self.nbits)
    }
}

/// Crossover probability of the sign channel `sgn(a + w)`, `w ~ N(0, s^2)`.
pub fn bsc_crossover(amplitude: f64, noise_std: f64) -> f64 {
    if noise_std <= 0.0 {
        return if amplitude == 0.0 { 0.5 } else { 0.0 };
    }
    q_function(amplitude.abs() / noise_std)
}
