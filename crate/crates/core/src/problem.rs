//! Decision vectors, box-bounded objectives, and function-evaluation accounting.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Objective callback. Always maximized.
pub type Objective = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A candidate solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub x: Vec<f64>,
    pub fit: f64,
    /// Marked for removal by the distance filter.
    pub tag: bool,
}

impl Individual {
    /// An individual whose fitness has not been evaluated yet (`fit` is NaN).
    pub fn unevaluated(x: Vec<f64>) -> Self {
        Self {
            x,
            fit: f64::NAN,
            tag: false,
        }
    }

    pub fn with_fitness(x: Vec<f64>, fit: f64) -> Self {
        Self { x, fit, tag: false }
    }
}

/// A box-bounded maximization problem.
#[derive(Clone)]
pub struct Problem {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective: Objective,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .finish_non_exhaustive()
    }
}

impl Problem {
    pub fn new(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::from_objective(name, lower, upper, Arc::new(objective))
    }

    pub fn from_objective(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        objective: Objective,
    ) -> Result<Self> {
        let name = name.into();
        if lower.is_empty() {
            return Err(Error::Problem(format!("{name}: dimension must be positive")));
        }
        if lower.len() != upper.len() {
            return Err(Error::Problem(format!(
                "{name}: {} lower bounds but {} upper bounds",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Problem(format!(
                    "{name}: bounds of dimension {i} must satisfy lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self {
            name,
            lower,
            upper,
            objective,
        })
    }

    /// Wraps a minimization objective by negation.
    pub fn minimizing(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        objective: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::new(name, lower, upper, move |x| -objective(x))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// Clamps `x` into the box in place.
    pub fn clamp(&self, x: &mut [f64]) {
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.max(*lo).min(*hi);
        }
    }

    /// Product of the side lengths of the box.
    pub fn volume(&self) -> f64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| hi - lo)
            .product()
    }
}

/// Draws `n` individuals uniformly inside the problem box. Fitness is left unset.
pub fn random_init(n: usize, problem: &Problem, rng: &mut RngStream) -> Vec<Individual> {
    (0..n)
        .map(|_| {
            let x = problem
                .lower()
                .iter()
                .zip(problem.upper())
                .map(|(lo, hi)| rng.uniform(*lo, *hi))
                .collect();
            Individual::unevaluated(x)
        })
        .collect()
}

/// Raised when an evaluation would exceed the function-evaluation budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded {
    pub used: u64,
    pub requested: u64,
    pub limit: u64,
}

impl fmt::Display for BudgetExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "evaluating {} more points would exceed the budget ({} of {} used)",
            self.requested, self.used, self.limit
        )
    }
}

impl std::error::Error for BudgetExceeded {}

/// Counts objective evaluations, optionally against a hard limit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalCounter {
    used: u64,
    limit: Option<u64>,
}

impl EvalCounter {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn with_limit(limit: u64) -> Self {
        Self {
            used: 0,
            limit: Some(limit),
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> Option<u64> {
        self.limit
    }
}

/// Evaluates every individual of `population`, charging `counter`.
///
/// The whole batch is refused, leaving the population and the counter
/// untouched, when it does not fit in the remaining budget.
pub fn evaluate_population(
    population: &mut [Individual],
    problem: &Problem,
    counter: &mut EvalCounter,
) -> std::result::Result<(), BudgetExceeded> {
    let requested = population.len() as u64;
    if let Some(limit) = counter.limit {
        if counter.used + requested > limit {
            return Err(BudgetExceeded {
                used: counter.used,
                requested,
                limit,
            });
        }
    }
    for ind in population.iter_mut() {
        ind.fit = problem.evaluate(&ind.x);
    }
    counter.used += requested;
    Ok(())
}
