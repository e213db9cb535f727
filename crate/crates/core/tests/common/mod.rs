//! Test-only oracles, independent of the library's numerical routines.

#![allow(dead_code)]

use gldpc_cs::{Alphabet, CodeKind, SchemeParams, Seeds};

/// Upper normal tail by composite Simpson quadrature of the density on
/// `[x, x + 40]`.
pub fn normal_tail_simpson(x: f64) -> f64 {
    let pdf = |t: f64| (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt();
    let (a, b, n) = (x, x + 40.0, 200_000);
    let h = (b - a) / n as f64;
    let mut s = pdf(a) + pdf(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * pdf(a + i as f64 * h);
    }
    s * h / 3.0
}

/// `P(chi^2_{2m} > x) = e^{-x/2} sum_{i<m} (x/2)^i / i!`.
pub fn chi_square_tail_even(dof: usize, x: f64) -> f64 {
    assert!(dof.is_multiple_of(2));
    let half = x / 2.0;
    let mut term = 1.0;
    let mut sum = 0.0;
    for i in 0..dof / 2 {
        if i > 0 {
            term *= half / i as f64;
        }
        sum += term;
    }
    (-half).exp() * sum
}

/// Binomial standard error of a proportion estimate.
pub fn binomial_se(p: f64, trials: usize) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

pub fn sample_variance(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
}

/// Small parameter set with explicit blocks and seeds.
pub fn params(n: u64, k: usize, b: usize, c2: usize, sigma2: f64, seed: u64) -> SchemeParams {
    let mut p = SchemeParams::recommended(n, k);
    p.b = b;
    p.c2 = c2;
    p.sigma2 = sigma2;
    p.code_kind = CodeKind::RegularLdpc;
    p.seeds = Seeds { graph: seed, column: seed ^ 0x55, code: 7, noise: seed ^ 0xaa };
    p
}

pub fn integer_alphabet(max: i32) -> Alphabet {
    Alphabet::Discrete((-max..=max).filter(|&v| v != 0).map(f64::from).collect())
}
