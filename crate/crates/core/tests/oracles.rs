//! Frozen reference values, recomputed from the test-only oracles.

mod common;

use common::{chi_square_tail_even, normal_tail_simpson};
use gldpc_cs::scheme::q_function;
use gldpc_cs::subcode::bsc_crossover;

#[test]
fn simpson_normal_tail_reproduces_frozen_values() {
    assert!((normal_tail_simpson(1.0) - 0.158_655_253_931_457).abs() < 1e-9);
    assert!((normal_tail_simpson(5.0) - 2.866_515_718_791_9e-7).abs() < 1e-15);
}

#[test]
fn q_function_agrees_with_quadrature() {
    for x in [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.5, 5.0, 8.0] {
        let oracle = normal_tail_simpson(x);
        let got = q_function(x);
        assert!((got - oracle).abs() <= 1e-9 * oracle.max(1e-300) + 1e-12, "x = {x}: {got} vs {oracle}");
    }
    assert!((bsc_crossover(1.0, 1.0) - normal_tail_simpson(1.0)).abs() < 1e-6);
}

#[test]
fn chi_square_tail_frozen() {
    // Zeroton false-alarm rate at c2 = 64, tau = 0.5.
    assert!((chi_square_tail_even(64, 96.0) - 0.005_925_409).abs() < 1e-8);
    assert!((chi_square_tail_even(2, 2.0) - (-1.0f64).exp()).abs() < 1e-15);
}
