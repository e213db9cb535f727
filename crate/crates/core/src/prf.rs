//! Counter-mode keyed pseudorandom streams.
//!
//! Every random object of the scheme (hash bins, Rademacher blocks, noise,
//! code construction) is a pure function of a 64-bit seed, a domain tag and a
//! 64-bit key. The key selects the ChaCha stream, so any column or bin can be
//! regenerated in isolation without touching the others.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Domain tags keep streams drawn from the same seed independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    Bins = 1,
    Rademacher = 2,
    Noise = 3,
    Code = 4,
    Signal = 5,
    Trial = 6,
}

/// Stream for `(seed, domain, key)`.
pub fn keyed_rng(seed: u64, domain: Domain, key: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&(domain as u64).to_le_bytes());
    bytes[16..24].copy_from_slice(&0x6c64_7063_735f_7072u64.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(bytes);
    rng.set_stream(key);
    rng
}

/// SplitMix64 finalizer, used to derive child seeds from tuples.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a seed from an ordered tuple of words.
pub fn derive_seed(parts: &[u64]) -> u64 {
    parts.iter().fold(0x243f_6a88_85a3_08d3, |acc, &p| mix64(acc ^ mix64(p)))
}
