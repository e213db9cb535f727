mod common;

use common::params;
use gldpc_cs::columns::{dense_matrix, subtract_contribution};
use gldpc_cs::{Instance, SparseSignal};
use proptest::prelude::*;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dense_x(x: &SparseSignal) -> Vec<f64> {
    (0..x.n()).map(|i| x.get(i)).collect()
}

#[test]
fn bin_measurements_equal_dense_product_with_noise() {
    let inst = Instance::new(params(64, 4, 12, 12, 0.5, 3)).unwrap();
    let x = SparseSignal::from_entries(64, [(3, 2.0), (17, -5.0), (40, 1.0), (63, 7.0)]).unwrap();
    let a = dense_matrix(&inst.hasher, &inst.generator, 64).unwrap();
    assert_eq!(a.rows, inst.params.m());
    let noise = inst.noise();
    let c = inst.generator.c();
    let expected: Vec<f64> = a
        .mul_vec(&dense_x(&x))
        .into_iter()
        .enumerate()
        .map(|(r, v)| v + noise.bin_noise(r / c, c)[r % c])
        .collect();
    let got = inst.measure(&x).unwrap().flatten();
    assert_eq!(got.len(), expected.len());
    for (g, e) in got.iter().zip(&expected) {
        assert_eq!(g.to_bits(), e.to_bits());
    }
}

#[test]
fn noiseless_measurements_equal_dense_product() {
    for seed in 0..20 {
        let inst = Instance::new(params(32, 4, 12, 10, 0.0, seed)).unwrap();
        let x = SparseSignal::from_entries(32, [(seed % 32, 3.0), (7, -1.0), (20, 4.0), (31, -9.0)]).unwrap();
        let a = dense_matrix(&inst.hasher, &inst.generator, 32).unwrap();
        assert_eq!(inst.measure(&x).unwrap().flatten(), a.mul_vec(&dense_x(&x)));
    }
}

#[test]
fn dense_matrix_refuses_huge_n() {
    let inst = Instance::new(params(1 << 40, 4, 12, 10, 0.0, 1)).unwrap();
    assert!(dense_matrix(&inst.hasher, &inst.generator, 1 << 40).is_err());
}

#[test]
fn columns_have_energy_c_and_bounded_correlation() {
    let inst = Instance::new(params(1 << 20, 4, 12, 40, 0.0, 9)).unwrap();
    let gen = &inst.generator;
    let c = gen.c() as f64;
    let cols: Vec<Vec<f64>> = (0..200u64).map(|i| gen.column(i * 5003).unwrap()).collect();
    for (a, ga) in cols.iter().enumerate() {
        assert_eq!(dot(ga, ga), c);
        for gb in &cols[a + 1..] {
            let r = dot(ga, gb) / c;
            assert!(r.abs() <= 1.0);
            // The all-ones block is shared by every column.
            assert!(r >= (gen.c1() as f64 - gen.c0() as f64 - gen.c2() as f64) / c);
        }
    }
}

#[test]
fn rademacher_blocks_are_balanced_and_independent_across_columns() {
    let inst = Instance::new(params(1 << 30, 4, 12, 64, 0.0, 2)).unwrap();
    let gen = &inst.generator;
    let (mut sum, mut cross, mut count) = (0.0, 0.0, 0usize);
    for i in 0..2000u64 {
        let r = gen.rademacher(i);
        let s = gen.rademacher(i + 1);
        assert_eq!(r.len(), 64);
        for (pos, &v) in r.iter().enumerate() {
            assert!(v == 1.0 || v == -1.0);
            assert_eq!(gen.rademacher_entry(i, pos), v);
        }
        sum += r.iter().sum::<f64>();
        cross += dot(&r, &s);
        count += 64;
    }
    // Mean and correlation both have standard deviation 1/sqrt(count).
    let bound = 5.0 / (count as f64).sqrt();
    assert!((sum / count as f64).abs() < bound);
    assert!((cross / count as f64).abs() < bound);
}

#[test]
fn subtract_then_add_restores_bin_exactly() {
    let inst = Instance::new(params(1 << 16, 4, 12, 32, 0.0, 5)).unwrap();
    let x = SparseSignal::from_entries(1 << 16, [(11, 4.0), (900, -3.0), (4000, 8.0)]).unwrap();
    let meas = inst.measure(&x).unwrap();
    for (i, v) in x.iter() {
        for j in inst.hasher.bins_of(i) {
            let peeled = subtract_contribution(&meas.bins[j], v, i, &inst.generator).unwrap();
            let mut restored = peeled.clone();
            restored.add_scaled(v, &inst.generator.column(i).unwrap());
            assert_eq!(restored, meas.bins[j]);
        }
    }
}

fn signal_strategy() -> impl Strategy<Value = Vec<(u64, i32)>> {
    prop::collection::vec((0u64..4096, -20i32..=20), 0..8)
}

fn build(entries: &[(u64, i32)]) -> SparseSignal {
    let mut x = SparseSignal::new(4096);
    for &(i, v) in entries {
        x.insert(i, x.get(i) + f64::from(v)).unwrap();
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn measurement_is_linear(a in signal_strategy(), b in signal_strategy(), seed in 0u64..1000) {
        let inst = Instance::new(params(4096, 8, 24, 16, 0.0, seed)).unwrap();
        let xa = build(&a);
        let xb = build(&b);
        let mut both = a.clone();
        both.extend(&b);
        let xab = build(&both);
        let ya = inst.measure(&xa).unwrap().flatten();
        let yb = inst.measure(&xb).unwrap().flatten();
        let yab = inst.measure(&xab).unwrap().flatten();
        for r in 0..yab.len() {
            prop_assert_eq!(yab[r], ya[r] + yb[r]);
        }
    }

    #[test]
    fn measurement_touches_only_hashed_bins(i in 0u64..4096, v in 1i32..50, seed in 0u64..1000) {
        let inst = Instance::new(params(4096, 8, 24, 16, 0.0, seed)).unwrap();
        let x = SparseSignal::from_entries(4096, [(i, f64::from(v))]).unwrap();
        let meas = inst.measure(&x).unwrap();
        let bins = inst.hasher.bins_of(i);
        for (j, bin) in meas.bins.iter().enumerate() {
            let energy: f64 = bin.values().iter().map(|y| y * y).sum();
            prop_assert_eq!(energy > 0.0, bins.contains(&j));
        }
    }
}
