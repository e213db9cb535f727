use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gldpc_cs::harness::{
    analyze_errors, analyze_graph, summarize, write_results_csv, Experiment, ExperimentConfig, SnrSummary,
    ERROR_CSV_HEADER, GRAPH_CSV_HEADER,
};
use gldpc_cs::Result;

#[derive(Parser)]
#[command(name = "gldpc-cs", version, about = "Generalized-LDPC compressive sensing experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode a single trial at the first SNR point and print a report.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Monte-Carlo sweep over the SNR grid; writes per-trial CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Defaults to the config's `out`, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Component census of random support graphs.
    AnalyzeGraph {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        seeds: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Message-passing versus actual estimation errors per recovered node.
    AnalyzeErrors {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
}

#[derive(Args)]
struct Overrides {
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated SNR grid in dB.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    snr_db: Option<Vec<f64>>,
}

impl Overrides {
    fn load(&self, path: &Path) -> Result<ExperimentConfig> {
        let mut config = ExperimentConfig::load(path)?;
        if let Some(seed) = self.seed {
            config.master_seed = seed;
        }
        if let Some(trials) = self.trials {
            config.trials = trials;
        }
        if let Some(snr) = &self.snr_db {
            config.snr_db = snr.clone();
        }
        config.validate()?;
        Ok(config)
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn print_summary(summary: &[SnrSummary]) {
    eprintln!("{:>8} {:>7} {:>12} {:>14} {:>12}", "snr_db", "trials", "support_err", "rel_mse", "decode_ms");
    for s in summary {
        let mse = s.mean_relative_mse.map_or_else(|| "-".to_string(), |v| format!("{v:.3e}"));
        eprintln!(
            "{:>8} {:>7} {:>12.4} {:>14} {:>12.3}",
            s.snr_db,
            s.trials,
            s.support_error_rate(),
            mse,
            1e3 * s.mean_decode_seconds
        );
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run { config, overrides } => {
            let config = overrides.load(&config)?;
            let experiment = Experiment::new(config)?;
            let snr = experiment.config().snr_db[0];
            let outcome = experiment.run_trial_detailed(0, snr, experiment.config().trial_seed(0, 0))?;
            let r = &outcome.record;
            println!("n                {}", r.n);
            println!("k                {}", r.k);
            println!("measurements     {}", outcome.params.m());
            println!("snr_db           {}", r.snr_db);
            println!("support_ok       {}", r.support_ok);
            println!("recovered        {}", outcome.decoded.estimate.len());
            match r.relative_mse {
                Some(v) => println!("relative_mse     {v:e}"),
                None => println!("relative_mse     -"),
            }
            println!("iterations       {}", r.iterations);
            println!("singleton_tests  {}", r.singleton_tests);
            println!("unresolved_bins  {}", outcome.decoded.unresolved_bins);
            println!("decode_seconds   {:.6}", r.decode_seconds);
        }
        Command::Sweep { config, out, overrides } => {
            let config = overrides.load(&config)?;
            let out = out.or_else(|| config.out.clone());
            let records = Experiment::new(config)?.sweep()?;
            let mut w = open_output(out.as_deref())?;
            write_results_csv(&records, &mut w)?;
            w.flush()?;
            print_summary(&summarize(&records));
        }
        Command::AnalyzeGraph { k, b, d, seeds, out } => {
            if d < 1 || d > b {
                return Err(gldpc_cs::Error::InvalidParams(format!("d = {d} must lie in 1..={b}")));
            }
            let mut w = open_output(out.as_deref())?;
            writeln!(w, "{GRAPH_CSV_HEADER}")?;
            for row in analyze_graph(k, b, d, seeds) {
                writeln!(w, "{row}")?;
            }
            w.flush()?;
        }
        Command::AnalyzeErrors { config, out, overrides } => {
            let config = overrides.load(&config)?;
            let trials = config.trials;
            let rows = analyze_errors(&Experiment::new(config)?, trials)?;
            let mut w = open_output(out.as_deref())?;
            writeln!(w, "{ERROR_CSV_HEADER}")?;
            for row in rows {
                writeln!(w, "{row}")?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
