//! A small population-size by bandwidth sweep, printed as a PR grid.
//!
//! ```text
//! cargo run --release --example parameter_sweep -- [F4] [runs]
//! ```

use mgp_bbbc::harness::{sweep, ExperimentConfig};
use mgp_bbbc::{make_benchmark, BandwidthStrategy, BenchmarkId, Budget};

fn main() -> mgp_bbbc::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: BenchmarkId = args.next().as_deref().unwrap_or("F4").parse()?;
    let runs: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let spec = make_benchmark(id);
    let mut base = ExperimentConfig::for_benchmark(spec, runs, 0);
    base.run.budget = Budget::Evaluations(20_000);
    base.run.accuracy = vec![1e-3];

    let pops = [50, 100, 200, 400];
    let bandwidths: Vec<BandwidthStrategy> =
        [2000.0, 500.0, 100.0, 20.0].into_iter().map(BandwidthStrategy::VolumeRatio).collect();
    let rows = sweep(&base, &pops, &bandwidths, |_| {})?;

    print!("{:>6}", "n \\ h");
    for bw in &bandwidths {
        print!("{:>10}", bw.to_string());
    }
    println!();
    for chunk in rows.chunks(bandwidths.len()) {
        print!("{:>6}", chunk[0].pop_size);
        for row in chunk {
            print!("{:>10.3}", row.pr);
        }
        println!();
    }
    Ok(())
}
