//! Checks every built-in peak registry: each peak must sit within 1e-7 of
//! the optimum value, and a local climb from it must not gain more than 1e-9.
//!
//! ```text
//! cargo run --release --example verify_registry
//! ```

use mgp_bbbc::benchmarks::verify_registry;
use mgp_bbbc::{make_benchmark, BenchmarkId};

fn main() {
    println!("func  dim  peaks  radius   max gap     max climb   ok");
    for id in BenchmarkId::ALL {
        let spec = make_benchmark(id);
        let report = verify_registry(&spec);
        println!(
            "{:<5} {:>3}  {:>5}  {:<6}  {:>9.2e}  {:>10.2e}   {}",
            id.to_string(),
            id.dim(),
            report.tnp,
            spec.registry.radius,
            report.max_gap(),
            report.max_climb_gain(),
            report.passes(1e-7, 1e-9)
        );
    }
}
