use gldpc_cs::graph::{component_census, BinHasher, ComponentClass, SupportGraph};
use gldpc_cs::harness::analyze_graph;

fn incidence_counts(indices: u64, b: usize, d: usize, seed: u64) -> Vec<u64> {
    let h = BinHasher::new(b, d, seed);
    let mut counts = vec![0u64; b];
    for i in 0..indices {
        for j in h.bins_of(i) {
            counts[j] += 1;
        }
    }
    counts
}

#[test]
fn bin_incidence_passes_chi_square_uniformity() {
    let (b, d, indices) = (300, 3, 100_000u64);
    let counts = incidence_counts(indices, b, d, 2024);
    let expected = (indices * d as u64) as f64 / b as f64;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 299 degrees of freedom: mean 299, sd ~24.5. Sampling without
    // replacement only shrinks the statistic.
    assert!(chi2 < 299.0 + 5.0 * 24.5, "chi2 = {chi2}");
}

#[test]
fn bin_incidence_frequencies_within_five_percent() {
    // At 10^5 indices the per-bin standard deviation is already 3.2% of
    // the mean, so the 5% band is checked at 10^6 indices (1%).
    let (b, d, indices) = (300, 3, 1_000_000u64);
    let counts = incidence_counts(indices, b, d, 7);
    let target = d as f64 / b as f64;
    for (j, &c) in counts.iter().enumerate() {
        let freq = c as f64 / indices as f64;
        assert!((freq - target).abs() <= 0.05 * target, "bin {j}: {freq}");
    }
}

#[test]
fn support_graph_edges_match_bins_of() {
    let h = BinHasher::new(4, 2, 31);
    let g = SupportGraph::build([2, 0, 1], &h);
    let expected: Vec<(u64, usize)> = (0..3).flat_map(|i| h.bins_of(i).into_iter().map(move |j| (i, j))).collect();
    assert_eq!(g.edges().collect::<Vec<_>>(), expected);
    for i in 0..3 {
        assert_eq!(g.bins_of(i).unwrap(), &h.bins_of(i)[..]);
        for j in h.bins_of(i) {
            assert!(g.signals_in(j).any(|s| s == i));
            assert!(h.contains(j, i));
        }
    }
}

#[test]
fn sparse_graphs_are_trees_and_unicycles() {
    // Well below the hypergraph phase transition (b = 10k), Complex
    // components are rare.
    let rows = analyze_graph(100, 1000, 3, 1000);
    let sparse = rows.iter().filter(|r| r.n_complex == 0).count();
    println!("k = 100, b = 1000: {sparse}/1000 graphs without Complex components");
    assert!(sparse >= 900);
    for r in &rows {
        assert_eq!(r.n_components, r.n_tree + r.n_unicyclic + r.n_complex);
    }
}

#[test]
fn census_is_recorded_at_b_equals_3k() {
    for k in [100, 400] {
        let rows = analyze_graph(k, 3 * k, 3, 200);
        let sparse = rows.iter().filter(|r| r.n_complex == 0).count();
        let mut largest: Vec<usize> = rows.iter().map(|r| r.largest_signals).collect();
        largest.sort_unstable();
        println!(
            "k = {k}, b = {}: {sparse}/200 without Complex components, median largest component {} signals",
            3 * k,
            largest[100]
        );
    }
}

#[test]
fn largest_component_growth_is_recorded() {
    let mut medians = Vec::new();
    for k in [50usize, 100, 200, 400] {
        let mut largest: Vec<usize> = analyze_graph(k, 3 * k, 3, 200).iter().map(|r| r.largest_signals).collect();
        largest.sort_unstable();
        medians.push((k, largest[100]));
    }
    println!("median largest component at b = 3k, d = 3: {medians:?}");
    assert!(medians.windows(2).all(|w| w[0].1 <= w[1].1));
}

#[test]
fn census_classes_follow_edge_excess() {
    for seed in 0..50 {
        let h = BinHasher::new(90, 3, seed);
        let report = component_census(&SupportGraph::build(0..30, &h));
        assert_eq!(report.components.iter().map(|c| c.edges).sum::<usize>(), 90);
        for c in &report.components {
            let excess = c.edges as i64 - c.nodes() as i64;
            let class = match excess {
                -1 => ComponentClass::Tree,
                0 => ComponentClass::Unicyclic,
                _ => ComponentClass::Complex,
            };
            assert!(excess >= -1);
            assert_eq!(c.class, class);
        }
    }
}
