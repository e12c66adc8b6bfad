//! Batch experiments: seeded repeated runs, scoring, and result files.
//!
//! Run `k` of a batch uses seed `base_seed + k`, so a partial batch can be
//! resumed or extended. Output directory layout:
//!
//! ```text
//! <out>/runs.csv            one row per (run, accuracy level)
//! <out>/summary.json        PR and SR per accuracy level
//! <out>/report.json         full report (config, per-run records, aggregates)
//! <out>/archives/run_NNN.txt  final archive, one elite per line
//! ```

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::BenchmarkSpec;
use crate::crunchbang::BandwidthStrategy;
use crate::error::{Error, Result};
use crate::metrics::{count_peaks, peak_ratio, RunResult};
use crate::problem::Individual;
use crate::solver::{run, Budget, RunConfig};

/// A batch of independent runs on one problem.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub spec: BenchmarkSpec,
    /// `seed` is ignored; each run gets `base_seed + k`.
    pub run: RunConfig,
    pub runs: usize,
    pub base_seed: u64,
}

impl ExperimentConfig {
    /// Defaults of the benchmark: its population size, bandwidth and budget.
    pub fn for_benchmark(spec: BenchmarkSpec, runs: usize, base_seed: u64) -> Self {
        let run = RunConfig::new(spec.default_pop, Budget::Evaluations(spec.max_fes), spec.default_bandwidth);
        Self {
            spec,
            run,
            runs,
            base_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.run.validate()?;
        if self.runs == 0 {
            return Err(Error::Config("number of runs must be at least 1".into()));
        }
        if self.run.accuracy.is_empty() {
            return Err(Error::Config("at least one accuracy level is required".into()));
        }
        if self.run.accuracy.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Config("accuracy levels must be sorted from loosest to tightest".into()));
        }
        Ok(())
    }

    pub fn seed_of(&self, run_index: usize) -> u64 {
        self.base_seed.wrapping_add(run_index as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_index: usize,
    pub seed: u64,
    /// Peaks found at each accuracy level, same order as the report's levels.
    pub npf: Vec<usize>,
    pub fes_used: u64,
    pub generations: usize,
    pub wall_time_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub epsilon: f64,
    pub pr: f64,
    pub sr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub problem: String,
    pub tnp: usize,
    pub pop_size: usize,
    pub bandwidth: BandwidthStrategy,
    pub max_fes: u64,
    pub accuracy: Vec<f64>,
    pub runs: Vec<RunRecord>,
    pub summary: Vec<LevelSummary>,
}

impl ExperimentReport {
    pub fn level(&self, epsilon: f64) -> Option<&LevelSummary> {
        self.summary.iter().find(|s| s.epsilon == epsilon)
    }
}

/// Result of one run of a batch, including its final archive.
#[derive(Debug, Clone)]
pub struct ScoredRun {
    pub record: RunRecord,
    pub results: Vec<RunResult>,
    pub archive: Vec<Individual>,
}

/// Runs and scores run `run_index` of `config`.
pub fn run_single(config: &ExperimentConfig, run_index: usize) -> Result<ScoredRun> {
    let seed = config.seed_of(run_index);
    let run_config = RunConfig {
        seed,
        ..config.run.clone()
    };
    let start = Instant::now();
    let outcome = run(&run_config, &config.spec.problem)?;
    let wall_time_secs = start.elapsed().as_secs_f64();
    let results: Vec<RunResult> = config
        .run
        .accuracy
        .iter()
        .map(|&eps| count_peaks(&outcome.archive, &config.spec.registry, eps))
        .collect();
    Ok(ScoredRun {
        record: RunRecord {
            run_index,
            seed,
            npf: results.iter().map(|r| r.npf).collect(),
            fes_used: outcome.fes_used,
            generations: outcome.generations,
            wall_time_secs,
        },
        results,
        archive: outcome.archive,
    })
}

/// PR and SR per accuracy level, from per-run records alone.
pub fn summarize(records: &[RunRecord], accuracy: &[f64], tnp: usize) -> Vec<LevelSummary> {
    accuracy
        .iter()
        .enumerate()
        .map(|(level, &epsilon)| {
            let npf: Vec<usize> = records.iter().map(|r| r.npf[level]).collect();
            let successes = npf.iter().filter(|&&k| k == tnp).count();
            LevelSummary {
                epsilon,
                pr: peak_ratio(&npf, tnp),
                sr: successes as f64 / npf.len() as f64,
            }
        })
        .collect()
}

/// Executes all runs (in parallel) and aggregates them.
pub fn run_experiment(config: &ExperimentConfig) -> Result<(ExperimentReport, Vec<ScoredRun>)> {
    config.validate()?;
    let scored: Vec<ScoredRun> = (0..config.runs)
        .into_par_iter()
        .map(|k| run_single(config, k))
        .collect::<Result<_>>()?;
    let records: Vec<RunRecord> = scored.iter().map(|s| s.record.clone()).collect();
    let report = build_report(config, records);
    Ok((report, scored))
}

pub fn build_report(config: &ExperimentConfig, records: Vec<RunRecord>) -> ExperimentReport {
    let tnp = config.spec.registry.tnp();
    ExperimentReport {
        problem: config.spec.label(),
        tnp,
        pop_size: config.run.pop_size,
        bandwidth: config.run.bandwidth,
        max_fes: config.run.max_fes(),
        accuracy: config.run.accuracy.clone(),
        summary: summarize(&records, &config.run.accuracy, tnp),
        runs: records,
    }
}

// ---------------------------------------------------------------------------
// files

/// One line of `runs.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub problem: String,
    pub run_index: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub npf: usize,
    pub tnp: usize,
    pub success: bool,
    pub fes_used: u64,
}

pub fn csv_rows(report: &ExperimentReport) -> Vec<CsvRow> {
    report
        .runs
        .iter()
        .flat_map(|r| {
            report.accuracy.iter().zip(&r.npf).map(move |(&epsilon, &npf)| CsvRow {
                problem: report.problem.clone(),
                run_index: r.run_index,
                seed: r.seed,
                epsilon,
                npf,
                tnp: report.tnp,
                success: npf == report.tnp,
                fes_used: r.fes_used,
            })
        })
        .collect()
}

pub fn write_runs_csv(path: &Path, report: &ExperimentReport) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for row in csv_rows(report) {
        w.serialize(row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_runs_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    r.deserialize()
        .collect::<std::result::Result<Vec<CsvRow>, _>>()
        .map_err(|e| csv_error(path, e))
}

/// Recomputes PR and SR per accuracy level from CSV rows.
pub fn summarize_rows(rows: &[CsvRow]) -> Vec<LevelSummary> {
    let mut levels: Vec<f64> = Vec::new();
    for row in rows {
        if !levels.contains(&row.epsilon) {
            levels.push(row.epsilon);
        }
    }
    levels
        .into_iter()
        .map(|epsilon| {
            let at: Vec<&CsvRow> = rows.iter().filter(|r| r.epsilon == epsilon).collect();
            let npf: Vec<usize> = at.iter().map(|r| r.npf).collect();
            LevelSummary {
                epsilon,
                pr: peak_ratio(&npf, at[0].tnp),
                sr: at.iter().filter(|r| r.success).count() as f64 / at.len() as f64,
            }
        })
        .collect()
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        }
    } else {
        Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        }
    }
}

pub fn report_to_json(report: &ExperimentReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn report_from_json(text: &str) -> std::result::Result<ExperimentReport, serde_json::Error> {
    serde_json::from_str(text)
}

/// Archive dump: one line per elite, coordinates then fitness, full precision.
pub fn format_archive(archive: &[Individual]) -> String {
    let mut out = String::new();
    for ind in archive {
        let fields: Vec<String> = ind
            .x
            .iter()
            .chain(std::iter::once(&ind.fit))
            .map(|v| format!("{v:e}"))
            .collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_archive(text: &str) -> std::result::Result<Vec<Individual>, String> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(k, line)| {
            let values = line
                .split_whitespace()
                .map(|t| t.parse::<f64>().map_err(|e| format!("line {}: {e}", k + 1)))
                .collect::<std::result::Result<Vec<f64>, String>>()?;
            let (fit, x) = values
                .split_last()
                .ok_or_else(|| format!("line {}: empty", k + 1))?;
            if x.is_empty() {
                return Err(format!("line {}: no coordinates", k + 1));
            }
            Ok(Individual::with_fitness(x.to_vec(), *fit))
        })
        .collect()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::File::create(path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .map_err(|e| Error::io(path, e))
}

/// Paths written by [`persist`].
#[derive(Debug, Clone)]
pub struct OutputFiles {
    pub runs_csv: PathBuf,
    pub summary: PathBuf,
    pub report: PathBuf,
    pub archives: Vec<PathBuf>,
}

/// Writes archives first, then the CSV, the summary and the report. On an
/// I/O error everything written so far stays on disk.
pub fn persist(dir: &Path, report: &ExperimentReport, runs: &[ScoredRun]) -> Result<OutputFiles> {
    let archive_dir = dir.join("archives");
    fs::create_dir_all(&archive_dir).map_err(|e| Error::io(&archive_dir, e))?;
    let mut archives = Vec::with_capacity(runs.len());
    for run in runs {
        let path = archive_dir.join(format!("run_{:03}.txt", run.record.run_index));
        write_file(&path, &format_archive(&run.archive))?;
        archives.push(path);
    }
    let runs_csv = dir.join("runs.csv");
    write_runs_csv(&runs_csv, report)?;
    let summary = dir.join("summary.json");
    write_file(
        &summary,
        &serde_json::to_string_pretty(&report.summary).expect("summary serializes"),
    )?;
    let report_path = dir.join("report.json");
    write_file(&report_path, &report_to_json(report))?;
    Ok(OutputFiles {
        runs_csv,
        summary,
        report: report_path,
        archives,
    })
}

// ---------------------------------------------------------------------------
// parameter sweeps

/// `count` evenly spaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|k| start + (end - start) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// Population sizes of the parameter study.
pub const SWEEP_POP_SIZES: [usize; 4] = [50, 100, 500, 1000];

/// Ten volume ratios from 2000 down to 10.
pub fn volume_ratio_grid() -> Vec<BandwidthStrategy> {
    linspace(2000.0, 10.0, 10)
        .into_iter()
        .map(BandwidthStrategy::VolumeRatio)
        .collect()
}

/// Ten spread ratios from 80 down to 3.
pub fn spread_ratio_grid() -> Vec<BandwidthStrategy> {
    linspace(80.0, 3.0, 10)
        .into_iter()
        .map(BandwidthStrategy::SpreadRatio)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub problem: String,
    pub pop_size: usize,
    pub bandwidth: BandwidthStrategy,
    pub epsilon: f64,
    pub pr: f64,
    pub sr: f64,
}

/// Runs a full batch for every (population size, bandwidth) combination.
pub fn sweep(
    base: &ExperimentConfig,
    pop_sizes: &[usize],
    bandwidths: &[BandwidthStrategy],
    mut on_cell: impl FnMut(&ExperimentReport),
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &n in pop_sizes {
        for &bw in bandwidths {
            let config = ExperimentConfig {
                run: RunConfig {
                    pop_size: n,
                    bandwidth: bw,
                    ..base.run.clone()
                },
                ..base.clone()
            };
            let (report, _) = run_experiment(&config)?;
            on_cell(&report);
            rows.extend(report.summary.iter().map(|s| SweepRow {
                problem: report.problem.clone(),
                pop_size: n,
                bandwidth: bw,
                epsilon: s.epsilon,
                pr: s.pr,
                sr: s.sr,
            }));
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.serialize(row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
