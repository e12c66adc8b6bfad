//! Solves one built-in problem and lists the distinct peaks in the final archive.
//!
//! ```text
//! cargo run --release --example solve_builtin -- [F4] [seed]
//! ```

use mgp_bbbc::metrics::count_peaks;
use mgp_bbbc::{make_benchmark, run, BenchmarkId, Budget, RunConfig};

fn main() -> mgp_bbbc::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: BenchmarkId = args.next().as_deref().unwrap_or("F4").parse()?;
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let spec = make_benchmark(id);
    let config = RunConfig::new(spec.default_pop, Budget::Evaluations(spec.max_fes), spec.default_bandwidth)
        .with_seed(seed);
    let outcome = run(&config, &spec.problem)?;
    println!(
        "{}: {} generations, {} evaluations, final h = {:.4}",
        spec.label(),
        outcome.generations,
        outcome.fes_used,
        outcome.bandwidth
    );

    let found = count_peaks(&outcome.archive, &spec.registry, 1e-4);
    println!("{}/{} peaks at eps = 1e-4", found.npf, found.tnp);
    for &p in &found.found_peaks {
        let peak = &spec.registry.peaks[p];
        let best = outcome
            .archive
            .iter()
            .filter(|ind| ind.x.iter().zip(peak).all(|(a, b)| (a - b).abs() <= spec.registry.radius))
            .max_by(|a, b| a.fit.total_cmp(&b.fit));
        if let Some(ind) = best {
            println!("  peak {p:>3} at {:?}: best elite {:?} f = {:.8}", peak, ind.x, ind.fit);
        }
    }
    Ok(())
}
