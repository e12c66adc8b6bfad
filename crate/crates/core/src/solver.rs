//! The optimizer main loop.
//!
//! ```text
//! O <- uniform init; A <- {}; th <- h
//! for it in 1..=g:
//!     if it != 1: O <- big_bang(COM, OPC, extent(it))
//!     evaluate O
//!     A, th <- survive(O, A, th)
//!     COM, OPC <- big_crunch(A, h)
//! return A
//! ```

use serde::{Deserialize, Serialize};

use crate::crunchbang::{big_bang_with_extent, big_crunch, BandwidthStrategy, CenterOfMass, ExtentSchedule};
use crate::error::{Error, Result};
use crate::metrics::DEFAULT_ACCURACY_LEVELS;
use crate::problem::{evaluate_population, random_init, EvalCounter, Individual, Problem};
use crate::rng::RngStream;
use crate::survival::{survive, DecayLimits};

/// Run length, either directly in generations or as an evaluation budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Budget {
    Generations(usize),
    /// Converted to `floor(max_fes / n)` generations of `n` evaluations each.
    Evaluations(u64),
}

/// Tunables of a single seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub pop_size: usize,
    pub budget: Budget,
    pub bandwidth: BandwidthStrategy,
    /// Accuracy levels used to score the final archive.
    pub accuracy: Vec<f64>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(pop_size: usize, budget: Budget, bandwidth: BandwidthStrategy) -> Self {
        Self {
            pop_size,
            budget,
            bandwidth,
            accuracy: DEFAULT_ACCURACY_LEVELS.to_vec(),
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_accuracy(mut self, accuracy: Vec<f64>) -> Self {
        self.accuracy = accuracy;
        self
    }

    pub fn generations(&self) -> usize {
        match self.budget {
            Budget::Generations(g) => g,
            Budget::Evaluations(fes) => (fes / self.pop_size.max(1) as u64) as usize,
        }
    }

    pub fn max_fes(&self) -> u64 {
        match self.budget {
            Budget::Generations(g) => (g * self.pop_size) as u64,
            Budget::Evaluations(fes) => fes,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 2 {
            return Err(Error::Config(format!("population size must be at least 2, got {}", self.pop_size)));
        }
        if self.generations() < 1 {
            return Err(Error::Config(format!(
                "budget {:?} leaves no complete generation of {} evaluations",
                self.budget, self.pop_size
            )));
        }
        self.bandwidth.validate()?;
        if let Some(bad) = self.accuracy.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
            return Err(Error::Config(format!("accuracy levels must be positive, got {bad}")));
        }
        Ok(())
    }
}

/// Snapshot taken at the end of every generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationTrace {
    pub it: usize,
    pub offspring: usize,
    pub archive: usize,
    pub centers: usize,
    pub opc_sum: usize,
    pub threshold: f64,
    pub bandwidth: f64,
    /// Extent used to create this generation's offspring (`None` at it = 1).
    pub extent: Option<Vec<f64>>,
    pub decays: usize,
    pub filled: usize,
    pub fes_used: u64,
    pub best_fit: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub archive: Vec<Individual>,
    pub fes_used: u64,
    pub generations: usize,
    pub threshold: f64,
    pub bandwidth: f64,
    /// The evaluation budget stopped the run before the last generation.
    pub exhausted: bool,
}

/// Runs the optimizer with the stream seeded from `config.seed`.
pub fn run(config: &RunConfig, problem: &Problem) -> Result<RunOutcome> {
    let mut rng = RngStream::new(config.seed);
    run_with(config, problem, &mut rng, |_| {})
}

/// Runs the optimizer on an explicit stream, reporting every generation.
pub fn run_with(
    config: &RunConfig,
    problem: &Problem,
    rng: &mut RngStream,
    mut observer: impl FnMut(&GenerationTrace),
) -> Result<RunOutcome> {
    config.validate()?;
    let n = config.pop_size;
    let g = config.generations();
    let schedule = ExtentSchedule::new(g, problem);
    let mut counter = match config.budget {
        Budget::Evaluations(fes) => EvalCounter::with_limit(fes),
        Budget::Generations(_) => EvalCounter::unlimited(),
    };

    let mut offspring = random_init(n, problem, rng);
    let mut h = config.bandwidth.initial(problem, &offspring);
    let limits = DecayLimits::for_bandwidth(h);
    let mut th = h;
    let mut archive: Vec<Individual> = Vec::new();
    let mut coms: Vec<CenterOfMass> = Vec::new();
    let mut opc: Vec<usize> = Vec::new();
    let mut completed = 0;
    let mut exhausted = false;

    for it in 1..=g {
        let extent = if it != 1 {
            let e = schedule.extent(it);
            offspring = big_bang_with_extent(&coms, &opc, &e, problem, rng);
            Some(e)
        } else {
            None
        };
        if evaluate_population(&mut offspring, problem, &mut counter).is_err() {
            exhausted = true;
            break;
        }
        let survived = survive(&offspring, &archive, th, limits, rng);
        archive = survived.archive;
        th = survived.threshold;
        h = config.bandwidth.update(h, &archive);
        (coms, opc) = big_crunch(&archive, h, rng);
        completed = it;

        observer(&GenerationTrace {
            it,
            offspring: offspring.len(),
            archive: archive.len(),
            centers: coms.len(),
            opc_sum: opc.iter().sum(),
            threshold: th,
            bandwidth: h,
            extent,
            decays: survived.decays,
            filled: survived.filled,
            fes_used: counter.used(),
            best_fit: archive.iter().map(|i| i.fit).fold(f64::NEG_INFINITY, f64::max),
        });
    }

    Ok(RunOutcome {
        archive,
        fes_used: counter.used(),
        generations: completed,
        threshold: th,
        bandwidth: h,
        exhausted,
    })
}
