// Build the explicit measurement matrix for a small `n` and compare it with
// the bin-wise measurement.

use gldpc_cs::columns::dense_matrix;
use gldpc_cs::{Instance, SchemeParams, SparseSignal};

pub fn run_example() -> Result<f64, Box<dyn std::error::Error>> {
    let n = 64;
    let mut params = SchemeParams::recommended(n, 4);
    params.seeds.graph = 2;
    let instance = Instance::new(params)?;
    let a = dense_matrix(&instance.hasher, &instance.generator, n)?;
    println!("A is {} x {}", a.rows, a.cols);

    let x = SparseSignal::from_entries(n, [(1, 3.0), (20, -1.0), (33, 6.0), (63, 2.0)])?;
    let dense: Vec<f64> = (0..n).map(|i| x.get(i)).collect();
    let reference = a.mul_vec(&dense);
    let binwise = instance.measure(&x)?.flatten();
    let max_diff = reference.iter().zip(&binwise).map(|(r, b)| (r - b).abs()).fold(0.0, f64::max);
    println!("max |A x - y| = {max_diff}");
    Ok(max_diff)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
