//! Analytic multimodal test problems F1..F10 with their known global peaks.
//!
//! Formulas, bounds, optimum values and evaluation budgets follow the
//! CEC'2013 niching benchmark suite. Niche radii and the per-problem default
//! population size and bandwidth are read from a versioned TOML table
//! (`data/benchmarks.toml`, embedded at compile time).

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::crunchbang::BandwidthStrategy;
use crate::error::{Error, Result};
use crate::problem::{Objective, Problem};

/// Embedded benchmark defaults table.
pub const DEFAULTS_TOML: &str = include_str!("../data/benchmarks.toml");

/// Supported version of the defaults table.
pub const DEFAULTS_VERSION: u32 = 1;

/// Maximum gap between a registered peak's value and the optimum accepted
/// by [`register_custom`].
pub const CUSTOM_PEAK_TOLERANCE: f64 = 1e-6;

// ---------------------------------------------------------------------------
// objective functions (maximization)

pub fn five_uneven_peak_trap(x: &[f64]) -> f64 {
    let x = x[0];
    match x {
        _ if x < 2.5 => 80.0 * (2.5 - x),
        _ if x < 5.0 => 64.0 * (x - 2.5),
        _ if x < 7.5 => 64.0 * (7.5 - x),
        _ if x < 12.5 => 28.0 * (x - 7.5),
        _ if x < 17.5 => 28.0 * (17.5 - x),
        _ if x < 22.5 => 32.0 * (x - 17.5),
        _ if x < 27.5 => 32.0 * (27.5 - x),
        _ => 80.0 * (x - 27.5),
    }
}

pub fn equal_maxima(x: &[f64]) -> f64 {
    (5.0 * PI * x[0]).sin().powi(6)
}

pub fn uneven_decreasing_maxima(x: &[f64]) -> f64 {
    let x = x[0];
    let envelope = (-2.0 * 2f64.ln() * ((x - 0.08) / 0.854).powi(2)).exp();
    envelope * (5.0 * PI * (x.powf(0.75) - 0.05)).sin().powi(6)
}

pub fn himmelblau(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    200.0 - (a * a + b - 11.0).powi(2) - (a + b * b - 7.0).powi(2)
}

pub fn six_hump_camel_back(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    let a2 = a * a;
    let b2 = b * b;
    -((4.0 - 2.1 * a2 + a2 * a2 / 3.0) * a2 + a * b + (4.0 * b2 - 4.0) * b2)
}

fn shubert_factor(v: f64) -> f64 {
    (1..=5)
        .map(|j| {
            let j = j as f64;
            j * ((j + 1.0) * v + j).cos()
        })
        .sum()
}

pub fn shubert(x: &[f64]) -> f64 {
    -x.iter().map(|&v| shubert_factor(v)).product::<f64>()
}

pub fn vincent(x: &[f64]) -> f64 {
    x.iter().map(|&v| (10.0 * v.ln()).sin()).sum::<f64>() / x.len() as f64
}

pub fn modified_rastrigin(x: &[f64]) -> f64 {
    const K: [f64; 2] = [3.0, 4.0];
    -x.iter()
        .zip(K)
        .map(|(&v, k)| 10.0 + 9.0 * (2.0 * PI * k * v).cos())
        .sum::<f64>()
}

// ---------------------------------------------------------------------------
// peak locations

/// Arg-max of [`uneven_decreasing_maxima`] and its value.
const F3_PEAK: f64 = 0.079_699_779_611_795_815;
const F3_OPTIMUM: f64 = 0.999_999_828_454_472_46;

const HIMMELBLAU_PEAKS: [[f64; 2]; 4] = [
    [3.0, 2.0],
    [-2.805_118_086_952_744_9, 3.131_312_518_250_573],
    [-3.779_310_253_377_747, -3.283_185_991_286_169_4],
    [3.584_428_340_330_491_7, -1.848_126_526_964_403_6],
];

const CAMEL_PEAKS: [[f64; 2]; 2] = [
    [0.089_842_013_100_318_06, -0.712_656_403_020_739_6],
    [-0.089_842_013_100_318_06, 0.712_656_403_020_739_6],
];

/// Arg-max / arg-min of one Shubert factor inside [-10, 10].
const SHUBERT_FACTOR_MAX: [f64; 3] = [
    -7.083_506_407_651_559_6,
    -0.800_321_100_471_973_1,
    5.482_864_206_707_613_4,
];
const SHUBERT_FACTOR_MIN: [f64; 3] = [
    -7.708_313_735_499_347_4,
    -1.425_128_428_319_761,
    4.858_056_878_859_825_5,
];

/// Global maxima of the D-dimensional Shubert function in [-10, 10]^D:
/// exactly one coordinate at a factor minimum, all others at factor maxima.
pub fn shubert_peaks(dim: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for min_axis in 0..dim {
        let mut partial: Vec<Vec<f64>> = vec![Vec::new()];
        for axis in 0..dim {
            let choices = if axis == min_axis {
                &SHUBERT_FACTOR_MIN
            } else {
                &SHUBERT_FACTOR_MAX
            };
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    choices.iter().map(move |&c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out
}

/// Per-axis maximizers of `sin(10 ln x)` inside [0.25, 10].
pub fn vincent_axis_peaks() -> Vec<f64> {
    (-2..=3)
        .map(|k| ((PI / 2.0 + 2.0 * PI * k as f64) / 10.0).exp())
        .collect()
}

fn grid_product(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect()
    })
}

// ---------------------------------------------------------------------------
// identifiers and specs

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum BenchmarkId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 10] = [
        BenchmarkId::F1,
        BenchmarkId::F2,
        BenchmarkId::F3,
        BenchmarkId::F4,
        BenchmarkId::F5,
        BenchmarkId::F6,
        BenchmarkId::F7,
        BenchmarkId::F8,
        BenchmarkId::F9,
        BenchmarkId::F10,
    ];

    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn dim(self) -> usize {
        use BenchmarkId::*;
        match self {
            F1 | F2 | F3 => 1,
            F4 | F5 | F6 | F7 | F10 => 2,
            F8 | F9 => 3,
        }
    }

    pub fn max_fes(self) -> u64 {
        use BenchmarkId::*;
        match self {
            F1 | F2 | F3 | F4 | F5 => 50_000,
            F6 | F7 | F10 => 200_000,
            F8 | F9 => 400_000,
        }
    }

    pub fn optimum(self) -> f64 {
        use BenchmarkId::*;
        match self {
            F1 | F4 => 200.0,
            F2 | F7 | F9 => 1.0,
            F3 => F3_OPTIMUM,
            F5 => 1.031_628_453_489_877,
            F6 => 186.730_908_831_023_9,
            F8 => 2_709.093_505_572_82,
            F10 => -2.0,
        }
    }

    pub fn bounds(self) -> (Vec<f64>, Vec<f64>) {
        use BenchmarkId::*;
        let d = self.dim();
        match self {
            F1 => (vec![0.0], vec![30.0]),
            F2 | F3 => (vec![0.0], vec![1.0]),
            F4 => (vec![-6.0; 2], vec![6.0; 2]),
            F5 => (vec![-1.9, -1.1], vec![1.9, 1.1]),
            F6 | F8 => (vec![-10.0; d], vec![10.0; d]),
            F7 | F9 => (vec![0.25; d], vec![10.0; d]),
            F10 => (vec![0.0; 2], vec![1.0; 2]),
        }
    }

    pub fn objective(self) -> Objective {
        use BenchmarkId::*;
        match self {
            F1 => Arc::new(five_uneven_peak_trap),
            F2 => Arc::new(equal_maxima),
            F3 => Arc::new(uneven_decreasing_maxima),
            F4 => Arc::new(himmelblau),
            F5 => Arc::new(six_hump_camel_back),
            F6 | F8 => Arc::new(shubert),
            F7 | F9 => Arc::new(vincent),
            F10 => Arc::new(modified_rastrigin),
        }
    }

    pub fn peaks(self) -> Vec<Vec<f64>> {
        use BenchmarkId::*;
        match self {
            F1 => vec![vec![0.0], vec![30.0]],
            F2 => (0..5).map(|k| vec![0.1 + 0.2 * k as f64]).collect(),
            F3 => vec![vec![F3_PEAK]],
            F4 => HIMMELBLAU_PEAKS.iter().map(|p| p.to_vec()).collect(),
            F5 => CAMEL_PEAKS.iter().map(|p| p.to_vec()).collect(),
            F6 => shubert_peaks(2),
            F8 => shubert_peaks(3),
            F7 => grid_product(&vec![vincent_axis_peaks(); 2]),
            F9 => grid_product(&vec![vincent_axis_peaks(); 3]),
            F10 => grid_product(&[
                vec![1.0 / 6.0, 0.5, 5.0 / 6.0],
                vec![0.125, 0.375, 0.625, 0.875],
            ]),
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.number())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches(['F', 'f']);
        digits
            .parse::<usize>()
            .ok()
            .and_then(|k| k.checked_sub(1))
            .and_then(|k| BenchmarkId::ALL.get(k).copied())
            .ok_or_else(|| Error::UnknownBenchmark(s.to_string()))
    }
}

impl TryFrom<String> for BenchmarkId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        value.parse()
    }
}

impl From<BenchmarkId> for String {
    fn from(value: BenchmarkId) -> Self {
        value.to_string()
    }
}

/// Known global peaks of a problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakRegistry {
    pub fstar: f64,
    pub peaks: Vec<Vec<f64>>,
    /// Two solutions closer than this are considered the same peak.
    pub radius: f64,
}

impl PeakRegistry {
    /// Total number of global peaks.
    pub fn tnp(&self) -> usize {
        self.peaks.len()
    }
}

/// Everything needed to run and score one problem.
#[derive(Debug, Clone)]
pub struct BenchmarkSpec {
    pub name: String,
    /// `None` for user-supplied problems.
    pub id: Option<BenchmarkId>,
    pub problem: Problem,
    pub registry: PeakRegistry,
    pub max_fes: u64,
    pub default_pop: usize,
    pub default_bandwidth: BandwidthStrategy,
}

impl BenchmarkSpec {
    pub fn label(&self) -> String {
        match self.id {
            Some(id) => id.to_string(),
            None => self.name.clone(),
        }
    }
}

// ---------------------------------------------------------------------------
// defaults table

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct BenchmarkDefaults {
    pub id: BenchmarkId,
    pub name: String,
    pub niche_radius: f64,
    pub pop_size: usize,
    pub bandwidth: BandwidthStrategy,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct DefaultsTable {
    pub version: u32,
    #[serde(rename = "benchmark")]
    pub benchmarks: Vec<BenchmarkDefaults>,
}

impl DefaultsTable {
    pub fn embedded() -> Self {
        Self::parse(DEFAULTS_TOML, Path::new("<embedded>")).expect("embedded benchmark table is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self> {
        let table: DefaultsTable = toml::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })?;
        if table.version != DEFAULTS_VERSION {
            return Err(Error::Parse {
                path: origin.to_path_buf(),
                message: format!(
                    "unsupported table version {} (expected {DEFAULTS_VERSION})",
                    table.version
                ),
            });
        }
        Ok(table)
    }

    pub fn get(&self, id: BenchmarkId) -> Option<&BenchmarkDefaults> {
        self.benchmarks.iter().find(|b| b.id == id)
    }
}

/// Builds a built-in benchmark using the embedded defaults table.
pub fn make_benchmark(id: BenchmarkId) -> BenchmarkSpec {
    make_benchmark_with(id, &DefaultsTable::embedded()).expect("embedded table covers F1..F10")
}

pub fn make_benchmark_with(id: BenchmarkId, table: &DefaultsTable) -> Result<BenchmarkSpec> {
    let defaults = table
        .get(id)
        .ok_or_else(|| Error::Config(format!("no defaults entry for {id}")))?;
    let (lower, upper) = id.bounds();
    let problem = Problem::from_objective(id.to_string(), lower, upper, id.objective())?;
    Ok(BenchmarkSpec {
        name: defaults.name.clone(),
        id: Some(id),
        problem,
        registry: PeakRegistry {
            fstar: id.optimum(),
            peaks: id.peaks(),
            radius: defaults.niche_radius,
        },
        max_fes: id.max_fes(),
        default_pop: defaults.pop_size,
        default_bandwidth: defaults.bandwidth,
    })
}

/// Wraps a user problem so the harness treats it like a built-in.
pub fn register_custom(
    problem: Problem,
    registry: PeakRegistry,
    max_fes: u64,
    default_pop: usize,
    default_bandwidth: BandwidthStrategy,
) -> Result<BenchmarkSpec> {
    if registry.peaks.is_empty() {
        return Err(Error::Registry("peak list is empty".into()));
    }
    if !(registry.radius > 0.0) {
        return Err(Error::Registry(format!("niche radius must be positive, got {}", registry.radius)));
    }
    for (k, peak) in registry.peaks.iter().enumerate() {
        if peak.len() != problem.dim() {
            return Err(Error::Registry(format!(
                "peak {k} has {} coordinates, problem has {}",
                peak.len(),
                problem.dim()
            )));
        }
        for (i, v) in peak.iter().enumerate() {
            let (lo, hi) = (problem.lower()[i], problem.upper()[i]);
            if !(lo <= *v && *v <= hi) {
                return Err(Error::Registry(format!(
                    "peak {k} coordinate {i} = {v} lies outside [{lo}, {hi}]"
                )));
            }
        }
        let value = problem.evaluate(peak);
        if !((registry.fstar - value).abs() < CUSTOM_PEAK_TOLERANCE) {
            return Err(Error::Registry(format!(
                "peak {k} evaluates to {value}, optimum is {}",
                registry.fstar
            )));
        }
    }
    default_bandwidth.validate()?;
    Ok(BenchmarkSpec {
        name: problem.name().to_string(),
        id: None,
        problem,
        registry,
        max_fes,
        default_pop,
        default_bandwidth,
    })
}

// ---------------------------------------------------------------------------
// custom problem files

/// Named objectives that declarative problem files can refer to.
#[derive(Clone)]
pub struct EvaluatorRegistry {
    entries: HashMap<String, Objective>,
}

impl Default for EvaluatorRegistry {
    /// Pre-populated with the built-in objectives under `F1`..`F10`.
    fn default() -> Self {
        let mut entries = HashMap::new();
        for id in BenchmarkId::ALL {
            entries.insert(id.to_string(), id.objective());
        }
        Self { entries }
    }
}

impl EvaluatorRegistry {
    pub fn empty() -> Self {
        Self {
            entries: HashMap::new(),
        }
    }

    pub fn register(&mut self, name: impl Into<String>, f: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) {
        self.entries.insert(name.into(), Arc::new(f));
    }

    pub fn get(&self, name: &str) -> Option<Objective> {
        self.entries.get(name).cloned()
    }

    pub fn names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.entries.keys().map(String::as_str).collect();
        names.sort_unstable();
        names
    }
}

/// Declarative description of a user-supplied problem (TOML).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomProblemFile {
    pub name: String,
    /// Key into an [`EvaluatorRegistry`].
    pub evaluator: String,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub max_fes: u64,
    pub fstar: f64,
    pub niche_radius: f64,
    pub pop_size: usize,
    pub bandwidth: BandwidthStrategy,
    pub peaks: Vec<Vec<f64>>,
}

impl CustomProblemFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn into_spec(self, evaluators: &EvaluatorRegistry) -> Result<BenchmarkSpec> {
        let objective = evaluators
            .get(&self.evaluator)
            .ok_or_else(|| Error::UnknownEvaluator(self.evaluator.clone()))?;
        let problem = Problem::from_objective(self.name, self.lower, self.upper, objective)?;
        register_custom(
            problem,
            PeakRegistry {
                fstar: self.fstar,
                peaks: self.peaks,
                radius: self.niche_radius,
            },
            self.max_fes,
            self.pop_size,
            self.bandwidth,
        )
    }
}

/// Resolves `F1`..`F10`, or otherwise treats `arg` as a custom problem file.
pub fn resolve_problem(arg: &str, evaluators: &EvaluatorRegistry) -> Result<BenchmarkSpec> {
    match arg.parse::<BenchmarkId>() {
        Ok(id) => Ok(make_benchmark(id)),
        Err(_) if Path::new(arg).exists() => CustomProblemFile::load(Path::new(arg))?.into_spec(evaluators),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// registry verification

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakCheck {
    pub index: usize,
    pub location: Vec<f64>,
    pub value: f64,
    /// `fstar - value`.
    pub gap: f64,
    /// Fitness gained by a bounded compass search started at the peak.
    pub climb_gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegistryReport {
    pub label: String,
    pub tnp: usize,
    pub fstar: f64,
    pub checks: Vec<PeakCheck>,
}

impl RegistryReport {
    pub fn max_gap(&self) -> f64 {
        self.checks.iter().map(|c| c.gap.abs()).fold(0.0, f64::max)
    }

    pub fn max_climb_gain(&self) -> f64 {
        self.checks.iter().map(|c| c.climb_gain).fold(0.0, f64::max)
    }

    pub fn passes(&self, value_tol: f64, climb_tol: f64) -> bool {
        self.max_gap() <= value_tol && self.max_climb_gain() <= climb_tol
    }
}

/// Compass search from `start`; returns the best point and value found.
pub fn hill_climb(problem: &Problem, start: &[f64], initial_step: f64, min_step: f64) -> (Vec<f64>, f64) {
    let mut x = start.to_vec();
    let mut best = problem.evaluate(&x);
    let mut step = initial_step;
    while step >= min_step {
        let mut improved = false;
        for i in 0..x.len() {
            for dir in [1.0, -1.0] {
                let mut y = x.clone();
                y[i] += dir * step;
                problem.clamp(&mut y);
                let v = problem.evaluate(&y);
                if v > best {
                    best = v;
                    x = y;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, best)
}

/// Evaluates every registered peak and tries to climb away from it.
pub fn verify_registry(spec: &BenchmarkSpec) -> RegistryReport {
    let checks = spec
        .registry
        .peaks
        .iter()
        .enumerate()
        .map(|(index, peak)| {
            let value = spec.problem.evaluate(peak);
            let (_, climbed) = hill_climb(&spec.problem, peak, 1e-3, 1e-10);
            PeakCheck {
                index,
                location: peak.clone(),
                value,
                gap: spec.registry.fstar - value,
                climb_gain: climbed - value,
            }
        })
        .collect();
    RegistryReport {
        label: spec.label(),
        tnp: spec.registry.tnp(),
        fstar: spec.registry.fstar,
        checks,
    }
}
