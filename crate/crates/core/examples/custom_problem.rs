//! Optimizes a user-defined objective with a hand-written peak registry.
//!
//! The objective is a 2-D "egg crate" with four equal maxima on [0, 1]^2.
//! The same problem could be described in TOML (see `custom_problem.toml`)
//! and loaded with `CustomProblemFile` once the closure is registered under
//! its evaluator name.
//!
//! ```text
//! cargo run --release --example custom_problem
//! ```

use std::f64::consts::PI;

use mgp_bbbc::benchmarks::{register_custom, CustomProblemFile, EvaluatorRegistry};
use mgp_bbbc::harness::{run_experiment, ExperimentConfig};
use mgp_bbbc::{BandwidthStrategy, PeakRegistry, Problem};

fn egg_crate(x: &[f64]) -> f64 {
    x.iter().map(|v| (2.0 * PI * v).sin().powi(2)).product()
}

fn main() -> mgp_bbbc::Result<()> {
    let problem = Problem::new("egg-crate", vec![0.0, 0.0], vec![1.0, 1.0], egg_crate)?;
    let registry = PeakRegistry {
        fstar: 1.0,
        peaks: vec![vec![0.25, 0.25], vec![0.25, 0.75], vec![0.75, 0.25], vec![0.75, 0.75]],
        radius: 0.05,
    };
    let spec = register_custom(problem, registry, 20_000, 200, BandwidthStrategy::Fixed(0.15))?;

    let (report, _) = run_experiment(&ExperimentConfig::for_benchmark(spec, 10, 0))?;
    for s in &report.summary {
        println!("eps {:.0e}: PR {:.3} SR {:.3}", s.epsilon, s.pr, s.sr);
    }

    let mut evaluators = EvaluatorRegistry::default();
    evaluators.register("egg-crate", egg_crate);
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/custom_problem.toml");
    let from_file = CustomProblemFile::load(path.as_ref())?.into_spec(&evaluators)?;
    println!(
        "{} from file: {} peaks, budget {}, h = {}",
        from_file.label(),
        from_file.registry.tnp(),
        from_file.max_fes,
        from_file.default_bandwidth
    );
    Ok(())
}
