// Encode indices with the LDPC subcode and decode them through a noisy
// sign channel.

use gldpc_cs::prf::{keyed_rng, Domain};
use gldpc_cs::subcode::bsc_crossover;
use gldpc_cs::{CodeKind, IndexCodec};
use rand::Rng;

pub fn run_example() -> Result<(usize, usize), Box<dyn std::error::Error>> {
    let n = 10_000_000_000u64;
    let ldpc = IndexCodec::new(n, 68, CodeKind::RegularLdpc, 3, 50)?;
    let repetition = IndexCodec::repetition(n, 68)?;
    let p = bsc_crossover(1.0, 0.5);
    println!("{} information bits, code length {}, crossover {p:.4}", ldpc.nbits(), ldpc.c0());

    let mut rng = keyed_rng(1, Domain::Trial, 0);
    let (mut ldpc_ok, mut rep_ok) = (0, 0);
    let trials = 2000;
    for _ in 0..trials {
        let i = rng.random_range(0..n);
        let flips: Vec<bool> = (0..68).map(|_| rng.random_bool(p)).collect();
        let through = |word: Vec<f64>| -> Vec<f64> {
            word.into_iter().zip(&flips).map(|(s, &f)| if f { -s } else { s }).collect()
        };
        ldpc_ok += usize::from(ldpc.decode(&through(ldpc.encode(i)?)) == Ok(i));
        rep_ok += usize::from(repetition.decode(&through(repetition.encode(i)?)) == Ok(i));
    }
    println!("LDPC decoded {ldpc_ok}/{trials}, repetition decoded {rep_ok}/{trials}");
    Ok((ldpc_ok, rep_ok))
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
