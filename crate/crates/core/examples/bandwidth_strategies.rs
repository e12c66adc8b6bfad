//! Compares the three bandwidth strategies on one problem: a fixed radius,
//! a radius from a search-space volume ratio, and a radius from the
//! population spread recomputed every generation.
//!
//! ```text
//! cargo run --release --example bandwidth_strategies -- [F6] [runs]
//! ```

use mgp_bbbc::crunchbang::bandwidth_from_volume_ratio;
use mgp_bbbc::harness::{run_experiment, ExperimentConfig};
use mgp_bbbc::{make_benchmark, BandwidthStrategy, BenchmarkId};

fn main() -> mgp_bbbc::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: BenchmarkId = args.next().as_deref().unwrap_or("F6").parse()?;
    let runs: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let spec = make_benchmark(id);

    let strategies: Vec<BandwidthStrategy> = ["0.2", "vol:2000", "vol:500", "spread:40", "spread:10"]
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    println!("{} at eps = 1e-4 over {runs} runs", spec.label());
    for strategy in strategies {
        if let BandwidthStrategy::VolumeRatio(r) = strategy {
            println!("  ({strategy} means h = {:.4})", bandwidth_from_volume_ratio(&spec.problem, r));
        }
        let mut config = ExperimentConfig::for_benchmark(spec.clone(), runs, 0);
        config.run.bandwidth = strategy;
        let (report, _) = run_experiment(&config)?;
        let s = report.level(1e-4).expect("default levels include 1e-4");
        println!("  {:<10} PR {:.3}  SR {:.3}", strategy.to_string(), s.pr, s.sr);
    }
    Ok(())
}
