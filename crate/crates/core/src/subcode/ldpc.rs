//! Random regular LDPC codes over GF(2) with a systematic encoder and a
//! hard-decision bit-flipping decoder.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::prf::{keyed_rng, Domain};

const MAX_ATTEMPTS: u64 = 256;
const COLUMN_WEIGHT: usize = 3;

/// Row of a GF(2) matrix packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn zeros(len: usize) -> Self {
        BitRow(vec![0; len.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }
}

/// A binary LDPC code of length `len` with `len - info` parity checks whose
/// first `info` positions carry the message bits.
#[derive(Debug, Clone)]
pub struct RegularLdpcCode {
    len: usize,
    info: usize,
    /// Variable positions of each check.
    checks: Vec<Vec<usize>>,
    /// Checks touching each variable.
    var_checks: Vec<Vec<usize>>,
    /// `parity[r]` is the set of message bits summed into parity bit `r`,
    /// stored as a mask over message bit positions.
    parity: Vec<BitRow>,
    max_iters: usize,
}

impl RegularLdpcCode {
    /// Draws a column-weight-3 parity-check matrix with near-equal row weights
    /// from `seed` and derives a systematic generator for it. Rank-deficient
    /// draws are discarded.
    pub fn random(len: usize, info: usize, seed: u64, max_iters: usize) -> Result<Self> {
        assert!(info >= 1 && info <= len, "message length {info} must lie in 1..={len}");
        let m = len - info;
        for attempt in 0..MAX_ATTEMPTS {
            let checks = random_check_structure(len, m, seed, attempt);
            if let Some(code) = Self::from_checks(len, info, checks, max_iters) {
                return Ok(code);
            }
        }
        Err(Error::LdpcConstruction(MAX_ATTEMPTS as usize))
    }

    /// Builds the code from explicit check rows, permuting codeword positions so
    /// that message bits come first. Returns `None` if the checks are not
    /// linearly independent.
    fn from_checks(len: usize, info: usize, checks: Vec<Vec<usize>>, max_iters: usize) -> Option<Self> {
        let m = checks.len();
        debug_assert_eq!(m, len - info);
        let mut rows: Vec<BitRow> = checks
            .iter()
            .map(|vars| {
                let mut row = BitRow::zeros(len);
                for &v in vars {
                    row.set(v);
                }
                row
            })
            .collect();

        // Reduced row echelon form; pivot columns become parity positions.
        let mut pivots = Vec::with_capacity(m);
        let mut r = 0;
        for col in 0..len {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&p| rows[p].get(col)) else { continue };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (q, row) in rows.iter_mut().enumerate() {
                if q != r && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
        if pivots.len() < m {
            return None;
        }

        let is_pivot = {
            let mut v = vec![false; len];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        // New layout: message positions in original order, then parity positions.
        let order: Vec<usize> = (0..len).filter(|&v| !is_pivot[v]).chain(pivots.iter().copied()).collect();
        let mut new_pos = vec![0; len];
        for (new, &old) in order.iter().enumerate() {
            new_pos[old] = new;
        }

        // Row r of the reduced matrix reads: parity bit r = sum of its message bits.
        let parity = rows
            .iter()
            .map(|row| {
                let mut mask = BitRow::zeros(info);
                for (t, &old) in order[..info].iter().enumerate() {
                    if row.get(old) {
                        mask.set(t);
                    }
                }
                mask
            })
            .collect();

        let checks: Vec<Vec<usize>> = checks
            .into_iter()
            .map(|vars| {
                let mut vs: Vec<usize> = vars.into_iter().map(|v| new_pos[v]).collect();
                vs.sort_unstable();
                vs
            })
            .collect();
        let mut var_checks = vec![Vec::new(); len];
        for (c, vars) in checks.iter().enumerate() {
            for &v in vars {
                var_checks[v].push(c);
            }
        }
        Some(RegularLdpcCode { len, info, checks, var_checks, parity, max_iters })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn info_len(&self) -> usize {
        self.info
    }

    pub fn checks(&self) -> &[Vec<usize>] {
        &self.checks
    }

    /// Systematic codeword of the message bits.
    pub fn encode(&self, message: &[bool]) -> Vec<bool> {
        assert_eq!(message.len(), self.info);
        let mut word = Vec::with_capacity(self.len);
        word.extend_from_slice(message);
        for mask in &self.parity {
            let bit = message.iter().enumerate().filter(|(t, &b)| b && mask.get(*t)).count() % 2 == 1;
            word.push(bit);
        }
        word
    }

    pub fn is_codeword(&self, word: &[bool]) -> bool {
        self.checks.iter().all(|vars| !check_parity(vars, word))
    }

    /// Parallel bit flipping: each round flips every bit for which more than
    /// half of its checks are unsatisfied. Returns the message bits of the final
    /// word if all checks are satisfied.
    pub fn decode(&self, received: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(received.len(), self.len);
        let mut word = received.to_vec();
        let mut unsatisfied = vec![false; self.checks.len()];
        for _ in 0..self.max_iters {
            let mut any = false;
            for (c, vars) in self.checks.iter().enumerate() {
                unsatisfied[c] = check_parity(vars, &word);
                any |= unsatisfied[c];
            }
            if !any {
                return Some(word[..self.info].to_vec());
            }
            // Unsatisfied-check count of every bit over the majority threshold.
            let candidates: Vec<(usize, usize)> = (0..self.len)
                .filter_map(|v| {
                    let deg = self.var_checks[v].len();
                    let bad = self.var_checks[v].iter().filter(|&&c| unsatisfied[c]).count();
                    (2 * bad > deg).then_some((v, bad))
                })
                .collect();
            // Only the worst offenders flip; their 4-cycle neighbours would
            // otherwise cross the threshold too and flip with them.
            let worst = candidates.iter().map(|&(_, bad)| bad).max()?;
            for (v, bad) in candidates {
                if bad == worst {
                    word[v] = !word[v];
                }
            }
        }
        self.is_codeword(&word).then(|| word[..self.info].to_vec())
    }
}

fn check_parity(vars: &[usize], word: &[bool]) -> bool {
    vars.iter().filter(|&&v| word[v]).count() % 2 == 1
}

/// Socket construction: `len * w` edge ends, spread over `m` checks as evenly
/// as possible, shuffled, then repaired by swaps until no variable hits the
/// same check twice.
fn random_check_structure(len: usize, m: usize, seed: u64, attempt: u64) -> Vec<Vec<usize>> {
    if m == 0 {
        return Vec::new();
    }
    // With three or fewer checks, weight 3 makes every row equal and
    // weight 2 makes the rows sum to zero; both are rank deficient.
    let w = if m > COLUMN_WEIGHT { COLUMN_WEIGHT } else { 1 };
    let mut rng = keyed_rng(seed, Domain::Code, attempt);
    let edges = len * w;
    let mut sockets: Vec<usize> = (0..edges).map(|e| e * m / edges).collect();
    sockets.shuffle(&mut rng);

    let has_dup = |s: &[usize], v: usize| {
        let group = &s[v * w..(v + 1) * w];
        (0..w).any(|a| (a + 1..w).any(|b| group[a] == group[b]))
    };
    for _ in 0..(100 * edges) {
        let Some(v) = (0..len).find(|&v| has_dup(&sockets, v)) else { break };
        let a = v * w + rng.random_range(0..w);
        let b = rng.random_range(0..edges);
        sockets.swap(a, b);
    }

    let mut checks = vec![Vec::new(); m];
    for v in 0..len {
        for &c in &sockets[v * w..(v + 1) * w] {
            // Parallel edges cancel over GF(2); keep the check set a set.
            if !checks[c].contains(&v) {
                checks[c].push(v);
            }
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits_of(x: u64, len: usize) -> Vec<bool> {
        (0..len).map(|t| x >> (len - 1 - t) & 1 == 1).collect()
    }

    #[test]
    fn rate_half_code_is_regular() {
        let code = RegularLdpcCode::random(64, 32, 9, 50).unwrap();
        assert_eq!(code.checks().len(), 32);
        assert!(code.checks().iter().all(|c| c.len() == 6));
        assert!(code.var_checks.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn every_encoded_word_satisfies_all_checks() {
        let code = RegularLdpcCode::random(24, 12, 1, 50).unwrap();
        for x in 0..(1u64 << 12) {
            let msg = bits_of(x, 12);
            let word = code.encode(&msg);
            assert_eq!(&word[..12], &msg[..]);
            assert!(code.is_codeword(&word));
        }
    }

    #[test]
    fn single_errors_are_corrected() {
        let code = RegularLdpcCode::random(68, 34, 3, 50).unwrap();
        let msg = bits_of(0x2_dead_beef, 34);
        let word = code.encode(&msg);
        let mut fixed = 0;
        for pos in 0..68 {
            let mut noisy = word.clone();
            noisy[pos] = !noisy[pos];
            if code.decode(&noisy).as_deref() == Some(&msg[..]) {
                fixed += 1;
            }
        }
        assert!(fixed >= 60, "only {fixed}/68 single flips corrected");
    }

    #[test]
    fn no_parity_degenerates_to_identity() {
        let code = RegularLdpcCode::random(5, 5, 0, 50).unwrap();
        let msg = bits_of(0b10110, 5);
        assert_eq!(code.encode(&msg), msg);
        assert_eq!(code.decode(&msg), Some(msg));
    }

    #[test]
    fn tiny_codes_construct() {
        for info in 1..=4 {
            for len in info..=2 * info + 1 {
                let code = RegularLdpcCode::random(len, info, 3, 50).unwrap();
                for word in 0..1u32 << info {
                    let msg = bits_of(word as u64, info);
                    assert_eq!(code.decode(&code.encode(&msg)), Some(msg));
                }
            }
        }
    }

    #[test]
    fn decoding_is_deterministic() {
        let code = RegularLdpcCode::random(32, 16, 11, 50).unwrap();
        let noisy: Vec<bool> = (0..32).map(|t| (t * 7) % 5 == 0).collect();
        assert_eq!(code.decode(&noisy), code.decode(&noisy));
    }

    #[test]
    fn dependent_checks_are_rejected() {
        let checks = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
        assert!(RegularLdpcCode::from_checks(4, 1, checks, 10).is_none());
    }
}
