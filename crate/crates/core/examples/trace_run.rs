//! Prints a per-generation trace of one run.
//!
//! ```text
//! cargo run --release --example trace_run -- F10 [seed] [bandwidth]
//! ```

use mgp_bbbc::metrics::count_peaks;
use mgp_bbbc::solver::{run_with, Budget, RunConfig};
use mgp_bbbc::{make_benchmark, BandwidthStrategy, BenchmarkId, RngStream};

fn main() -> mgp_bbbc::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: BenchmarkId = args.next().as_deref().unwrap_or("F4").parse()?;
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);
    let spec = make_benchmark(id);
    let bandwidth: BandwidthStrategy = match args.next() {
        Some(s) => s.parse()?,
        None => spec.default_bandwidth,
    };
    let config = RunConfig::new(spec.default_pop, Budget::Evaluations(spec.max_fes), bandwidth).with_seed(seed);

    println!("  it  centers  threshold      h         extent[0]   decays  filled  best");
    let outcome = run_with(&config, &spec.problem, &mut RngStream::new(seed), |t| {
        let e = t.extent.as_ref().map_or(f64::NAN, |e| e[0]);
        println!(
            "{:>4}  {:>7}  {:>10.3e}  {:>9.3e}  {:>10.3e}  {:>6}  {:>6}  {:.6}",
            t.it, t.centers, t.threshold, t.bandwidth, e, t.decays, t.filled, t.best_fit
        );
    })?;
    for eps in &config.accuracy {
        let r = count_peaks(&outcome.archive, &spec.registry, *eps);
        println!("eps {eps:.0e}: {}/{} peaks", r.npf, r.tnp);
    }
    Ok(())
}
