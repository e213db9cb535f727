// Support recovery and relative MSE over an SNR grid with a discrete
// alphabet.

use gldpc_cs::harness::{summarize, Experiment, ExperimentConfig, SnrSummary};

pub fn run_example() -> Result<Vec<SnrSummary>, Box<dyn std::error::Error>> {
    let alphabet: Vec<f64> = (-10..=10).filter(|&v| v != 0).map(f64::from).collect();
    let mut config = ExperimentConfig::recommended(10_000_000_000, 100).with_discrete_alphabet(alphabet);
    config.snr_db = vec![0.0, 5.0, 10.0, 20.0];
    config.trials = 50;
    let summary = summarize(&Experiment::new(config)?.sweep()?);
    for s in &summary {
        println!(
            "{:>5} dB  support error {:.3} +- {:.3}  mse {}",
            s.snr_db,
            s.support_error_rate(),
            s.support_error_se(),
            s.mean_relative_mse.map_or("-".into(), |v| format!("{v:.2e}"))
        );
    }
    Ok(summary)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
