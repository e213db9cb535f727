// Measure a sparse signal of length 2^40 and recover it by peeling.

use gldpc_cs::{Instance, SchemeParams, SparseSignal};

pub fn run_example() -> Result<SparseSignal, Box<dyn std::error::Error>> {
    let n = 1u64 << 40;
    let mut params = SchemeParams::recommended(n, 64);
    params.sigma2 = 1e-3;
    params.seeds.graph = 11;
    params.seeds.column = 12;
    params.seeds.noise = 13;
    let instance = Instance::new(params)?;

    let x = SparseSignal::from_entries(n, (0..64u64).map(|t| (t * 17_179_869_143 % n, 1.0 + (t % 9) as f64)))?;
    let y = instance.measure(&x)?;
    let result = instance.decode(&y)?;

    println!("n = {n}, k = {}, measurements = {}", x.len(), instance.params.m());
    println!(
        "recovered {} entries in {} generations, support correct: {}",
        result.estimate.len(),
        result.iterations,
        result.estimate.same_support(&x)
    );
    println!("relative squared error {:.3e}", result.estimate.squared_distance(&x) / x.squared_norm());
    Ok(result.estimate)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
