//! Runs a seeded batch and writes the result files: per-run CSV, summary and
//! report JSON, and one archive dump per run.
//!
//! ```text
//! cargo run --release --example batch_experiment -- [F2] [runs] [out-dir]
//! ```

use std::path::PathBuf;

use mgp_bbbc::harness::{persist, read_runs_csv, run_experiment, summarize_rows, ExperimentConfig};
use mgp_bbbc::{make_benchmark, BenchmarkId};

fn main() -> mgp_bbbc::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: BenchmarkId = args.next().as_deref().unwrap_or("F2").parse()?;
    let runs: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(4);
    let out: PathBuf = args.next().map_or_else(|| std::env::temp_dir().join("mgpbbbc-batch"), PathBuf::from);

    let config = ExperimentConfig::for_benchmark(make_benchmark(id), runs, 1000);
    let (report, scored) = run_experiment(&config)?;
    std::fs::create_dir_all(&out).map_err(|e| mgp_bbbc::Error::Io { path: out.clone(), source: e })?;
    let files = persist(&out, &report, &scored)?;

    for r in &report.runs {
        println!("run {} seed {}: npf {:?} in {:.2}s", r.run_index, r.seed, r.npf, r.wall_time_secs);
    }
    // the CSV alone is enough to rebuild the table
    let rebuilt = summarize_rows(&read_runs_csv(&files.runs_csv)?);
    for (s, t) in report.summary.iter().zip(&rebuilt) {
        println!("eps {:.0e}: PR {:.3} SR {:.3} (from csv: {:.3} {:.3})", s.epsilon, s.pr, s.sr, t.pr, t.sr);
    }
    println!("wrote {} and {} archives", files.report.display(), files.archives.len());
    Ok(())
}
