//! Multiple-global-peaks big bang-big crunch optimization.
//!
//! A population-based optimizer that locates *all* global maxima of a
//! box-bounded objective. Each generation:
//!
//! 1. **big bang** scatters offspring around the current centers of mass
//!    ([`crunchbang::big_bang`]) with an extent that shrinks over the run;
//! 2. **survival** merges offspring into a fixed-size archive of elites after
//!    a distance filter that protects isolated individuals
//!    ([`survival::survive`]);
//! 3. **big crunch** clusters the archive with flat-kernel mean shift and
//!    keeps the best member of every cluster as a center of mass
//!    ([`crunchbang::big_crunch`]).
//!
//! The crate also ships the analytic CEC'2013 niching problems F1..F10
//! ([`benchmarks`]), peak-ratio / success-ratio scoring ([`metrics`]) and a
//! seeded batch harness ([`harness`]).
//!
//! ```
//! use mgp_bbbc::{benchmarks::{make_benchmark, BenchmarkId}, metrics::count_peaks, solver};
//!
//! let spec = make_benchmark(BenchmarkId::F4);
//! let config = solver::RunConfig::new(200, solver::Budget::Generations(40), spec.default_bandwidth)
//!     .with_seed(1);
//! let outcome = solver::run(&config, &spec.problem).unwrap();
//! let found = count_peaks(&outcome.archive, &spec.registry, 1e-1);
//! assert!(found.npf >= 1);
//! ```

pub mod benchmarks;
pub mod clustering;
pub mod crunchbang;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod problem;
pub mod rng;
pub mod solver;
pub mod survival;

pub use benchmarks::{make_benchmark, BenchmarkId, BenchmarkSpec, PeakRegistry};
pub use crunchbang::BandwidthStrategy;
pub use error::{Error, Result};
pub use problem::{Individual, Problem};
pub use rng::RngStream;
pub use solver::{run, Budget, RunConfig, RunOutcome};
