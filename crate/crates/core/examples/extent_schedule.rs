//! Prints the big-bang extent schedule: a logarithmic decay over the first
//! 60% of the generations, then five plateaus from 1e-1 down to 1e-5.
//!
//! ```text
//! cargo run --release --example extent_schedule -- [generations] [F6]
//! ```

use mgp_bbbc::crunchbang::ExtentSchedule;
use mgp_bbbc::{make_benchmark, BenchmarkId};

fn main() -> mgp_bbbc::Result<()> {
    let mut args = std::env::args().skip(1);
    let g: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(50);
    let id: BenchmarkId = args.next().as_deref().unwrap_or("F6").parse()?;
    let spec = make_benchmark(id);
    let schedule = ExtentSchedule::new(g, &spec.problem);

    println!(
        "{}: g = {g}, start extent {:?}, exploitation from it = {}, plateau length {}",
        spec.label(),
        schedule.start(),
        schedule.exploitation_start(),
        schedule.plateau()
    );
    for it in 1..=g {
        let e = schedule.extent(it);
        let phase = if schedule.is_exploring(it) { "explore" } else { "exploit" };
        let bar = "#".repeat(((e[0].log10() + 5.0) * 8.0).max(0.0) as usize);
        println!("{it:>5}  {phase}  {:>10.3e}  {bar}", e[0]);
    }
    Ok(())
}
