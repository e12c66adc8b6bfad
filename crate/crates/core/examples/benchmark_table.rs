//! Reproduces a peak-ratio / success-ratio table on the built-in problems.
//!
//! ```text
//! cargo run --release --example benchmark_table -- [runs] [F1,F2,...]
//! ```

use std::time::Instant;

use mgp_bbbc::harness::{run_experiment, ExperimentConfig};
use mgp_bbbc::{make_benchmark, BenchmarkId};

fn main() -> mgp_bbbc::Result<()> {
    let mut args = std::env::args().skip(1);
    let runs: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let ids: Vec<BenchmarkId> = match args.next() {
        Some(list) => list.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => vec![BenchmarkId::F1, BenchmarkId::F2, BenchmarkId::F3, BenchmarkId::F4, BenchmarkId::F5],
    };

    println!("func   n     h      eps=1e-1      1e-2          1e-3          1e-4          1e-5        time");
    for id in ids {
        let config = ExperimentConfig::for_benchmark(make_benchmark(id), runs, 0);
        let start = Instant::now();
        let (report, _) = run_experiment(&config)?;
        let cells: Vec<String> = report
            .summary
            .iter()
            .map(|s| format!("{:.3}/{:.3}", s.pr, s.sr))
            .collect();
        println!(
            "{:<6} {:<5} {:<6} {}  {:>6.1}s",
            report.problem,
            report.pop_size,
            report.bandwidth.to_string(),
            cells.join("   "),
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
