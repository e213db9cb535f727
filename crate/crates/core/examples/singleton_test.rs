// Classify zeroton, singleton and multiton bins.

use gldpc_cs::{singleton_test, Instance, SchemeParams, SingletonTestResult, SparseSignal};

pub fn run_example() -> Result<Vec<SingletonTestResult>, Box<dyn std::error::Error>> {
    let n = 1u64 << 32;
    let mut params = SchemeParams::recommended(n, 3);
    params.b = 4;
    params.d = 1;
    params.sigma2 = 0.01;
    params.seeds.noise = 5;
    let instance = Instance::new(params)?;

    // Two entries that share a bin and one on its own.
    let (a, b) = (1000u64, 2000u64);
    let shared = instance.hasher.bins_of(a)[0];
    let partner = (b..).find(|&i| instance.hasher.bins_of(i)[0] == shared).unwrap();
    let lone = (b..).find(|&i| instance.hasher.bins_of(i)[0] != shared).unwrap();
    let x = SparseSignal::from_entries(n, [(a, 4.0), (partner, -2.0), (lone, 7.5)])?;
    let y = instance.measure(&x)?;

    let mut out = Vec::new();
    for (j, bin) in y.bins.iter().enumerate() {
        let r = singleton_test(bin, &instance.params, &instance.generator, &instance.hasher, j);
        println!("bin {j}: {r:?}");
        out.push(r);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
