//! Command-line front end: batch runs, registry checks and parameter sweeps.
//!
//! Exit codes: 0 success, 1 configuration error, 2 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mgp_bbbc::benchmarks::{resolve_problem, verify_registry, EvaluatorRegistry};
use mgp_bbbc::harness::{
    persist, run_experiment, spread_ratio_grid, sweep, volume_ratio_grid, write_sweep_csv, ExperimentConfig,
    SWEEP_POP_SIZES,
};
use mgp_bbbc::metrics::DEFAULT_ACCURACY_LEVELS;
use mgp_bbbc::{BandwidthStrategy, Budget, Error};

#[derive(Parser)]
#[command(name = "mgpbbbc", version, about = "Multimodal big bang-big crunch optimizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct BatchArgs {
    /// F1..F10, or a custom problem TOML file
    #[arg(long)]
    problem: String,
    /// Evaluation budget per run (defaults to the benchmark budget)
    #[arg(long)]
    max_fes: Option<u64>,
    #[arg(long, default_value_t = 50)]
    runs: usize,
    /// Base seed; run k uses seed + k
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated accuracy levels, loosest first
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ACCURACY_LEVELS.to_vec())]
    accuracy: Vec<f64>,
    #[arg(long, default_value = "results")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// ten volume ratios from 2000 to 10
    Volume,
    /// ten spread ratios from 80 to 3
    Spread,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded batch and write CSV, summary, report and archive dumps
    Run {
        #[command(flatten)]
        batch: BatchArgs,
        #[arg(long)]
        pop: Option<usize>,
        /// `<h>`, `vol:<ratio>` or `spread:<ratio>`
        #[arg(long)]
        bandwidth: Option<BandwidthStrategy>,
    },
    /// Check that every registered peak is a global maximum
    VerifyRegistry {
        #[arg(long)]
        problem: String,
    },
    /// Run a batch for every (population size, bandwidth) pair
    Sweep {
        #[command(flatten)]
        batch: BatchArgs,
        #[arg(long, value_delimiter = ',', default_values_t = SWEEP_POP_SIZES.to_vec())]
        pops: Vec<usize>,
        /// Comma-separated bandwidths; overrides --preset
        #[arg(long, value_delimiter = ',')]
        bandwidths: Vec<BandwidthStrategy>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
    },
}

fn experiment(batch: &BatchArgs) -> Result<ExperimentConfig, Error> {
    let spec = resolve_problem(&batch.problem, &EvaluatorRegistry::default())?;
    let mut config = ExperimentConfig::for_benchmark(spec, batch.runs, batch.seed);
    if let Some(fes) = batch.max_fes {
        config.run.budget = Budget::Evaluations(fes);
    }
    config.run.accuracy = batch.accuracy.clone();
    Ok(config)
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run { batch, pop, bandwidth } => {
            let mut config = experiment(&batch)?;
            if let Some(n) = pop {
                config.run.pop_size = n;
            }
            if let Some(bw) = bandwidth {
                config.run.bandwidth = bw;
            }
            config.validate()?;
            eprintln!(
                "{}: n={} h={} max_fes={} runs={} seed={}",
                config.spec.label(),
                config.run.pop_size,
                config.run.bandwidth,
                config.run.max_fes(),
                config.runs,
                config.base_seed
            );
            let (report, runs) = run_experiment(&config)?;
            std::fs::create_dir_all(&batch.out).map_err(|e| Error::Io {
                path: batch.out.clone(),
                source: e,
            })?;
            let files = persist(&batch.out, &report, &runs)?;
            println!("epsilon\tPR\tSR");
            for s in &report.summary {
                println!("{:.0e}\t{:.3}\t{:.3}", s.epsilon, s.pr, s.sr);
            }
            eprintln!("wrote {}", files.report.display());
        }
        Command::VerifyRegistry { problem } => {
            let spec = resolve_problem(&problem, &EvaluatorRegistry::default())?;
            let report = verify_registry(&spec);
            println!("{}: {} peaks, fstar = {}", report.label, report.tnp, report.fstar);
            for c in &report.checks {
                println!("  #{:<3} gap {:>10.3e}  climb {:>10.3e}  {:?}", c.index, c.gap, c.climb_gain, c.location);
            }
            let ok = report.passes(1e-7, 1e-9);
            println!(
                "max gap {:.3e}, max climb gain {:.3e}: {}",
                report.max_gap(),
                report.max_climb_gain(),
                if ok { "ok" } else { "FAILED" }
            );
            if !ok {
                return Err(Error::Registry(format!("{} failed verification", report.label)));
            }
        }
        Command::Sweep {
            batch,
            pops,
            bandwidths,
            preset,
        } => {
            let config = experiment(&batch)?;
            let grid = match (bandwidths.is_empty(), preset) {
                (false, _) => bandwidths,
                (true, Some(Preset::Volume)) => volume_ratio_grid(),
                (true, Some(Preset::Spread)) => spread_ratio_grid(),
                (true, None) => {
                    return Err(Error::Config("sweep needs --bandwidths or --preset".into()));
                }
            };
            for &n in &pops {
                for &bw in &grid {
                    let mut cell = config.clone();
                    cell.run.pop_size = n;
                    cell.run.bandwidth = bw;
                    cell.validate()?;
                }
            }
            std::fs::create_dir_all(&batch.out).map_err(|e| Error::Io {
                path: batch.out.clone(),
                source: e,
            })?;
            let rows = sweep(&config, &pops, &grid, |r| {
                let line: Vec<String> = r.summary.iter().map(|s| format!("{:.3}", s.pr)).collect();
                eprintln!("n={} h={} PR {}", r.pop_size, r.bandwidth, line.join(" "));
            })?;
            let path = batch.out.join("sweep.csv");
            write_sweep_csv(&path, &rows)?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_io() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
