// Component census of random support graphs as the number of bins grows.

use gldpc_cs::graph::ComponentClass;
use gldpc_cs::harness::{analyze_graph, GraphRow};

pub fn run_example() -> Result<Vec<(usize, f64)>, Box<dyn std::error::Error>> {
    let k = 100;
    let mut out = Vec::new();
    for ratio in [2, 3, 4, 6, 10] {
        let rows: Vec<GraphRow> = analyze_graph(k, ratio * k, 3, 200);
        let sparse = rows.iter().filter(|r| r.n_complex == 0).count() as f64 / rows.len() as f64;
        let mut largest: Vec<usize> = rows.iter().map(|r| r.largest_signals).collect();
        largest.sort_unstable();
        println!(
            "b = {ratio}k: {:.1}% free of {:?} components, median largest component {}",
            100.0 * sparse,
            ComponentClass::Complex,
            largest[largest.len() / 2]
        );
        out.push((ratio, sparse));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
