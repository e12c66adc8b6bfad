//! Environmental selection: distance filtering followed by mu+lambda truncation.
//!
//! Filtering removes the worse member of every pair closer than a threshold,
//! so isolated individuals on small peaks are not crowded out by dense
//! clusters of elites on large peaks. The threshold shrinks by 10% whenever
//! filtering leaves fewer than `n` survivors.

use crate::problem::Individual;
use crate::rng::RngStream;

/// Multiplicative threshold decay applied when too few individuals survive.
pub const THRESHOLD_DECAY: f64 = 0.9;

/// One entry of the pairwise distance table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairRecord {
    /// Euclidean (not squared) distance, so it shares units with the threshold.
    pub dist: f64,
    pub ind1: usize,
    pub ind2: usize,
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v) * (u - v))
        .sum::<f64>()
        .sqrt()
}

/// All `|P|(|P|-1)/2` pairs, `i` ascending then `j = i+1..`.
pub fn pairwise_distances(population: &[Individual]) -> Vec<PairRecord> {
    let n = population.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push(PairRecord {
                dist: euclidean(&population[i].x, &population[j].x),
                ind1: i,
                ind2: j,
            });
        }
    }
    out
}

/// The subsequence of [`pairwise_distances`] with `dist < threshold`.
///
/// Filtering only ever looks at these records, and the threshold never grows
/// during one survival stage, so computing them once is enough.
fn close_pairs(population: &[Individual], threshold: f64) -> Vec<PairRecord> {
    let n = population.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let dist = euclidean(&population[i].x, &population[j].x);
            if dist < threshold {
                out.push(PairRecord {
                    dist,
                    ind1: i,
                    ind2: j,
                });
            }
        }
    }
    out
}

/// Computes removal tags. `tags[k]` is true if `population[k]` is filtered out.
fn filter_tags(len: usize, fitness: impl Fn(usize) -> f64, pairs: &[PairRecord], threshold: f64) -> Vec<bool> {
    let mut tags = vec![false; len];
    for rec in pairs {
        if rec.dist < threshold && !tags[rec.ind1] && !tags[rec.ind2] {
            if fitness(rec.ind1) >= fitness(rec.ind2) {
                tags[rec.ind2] = true;
            } else {
                tags[rec.ind1] = true;
            }
        }
    }
    tags
}

/// Removes the worse member of every pair closer than `threshold`, scanning
/// `pairs` in order and skipping pairs with an already-removed member.
///
/// On equal fitness the second index is removed. Survivors keep their
/// original order and come back with `tag` cleared.
pub fn filter_population(
    population: &[Individual],
    pairs: &[PairRecord],
    threshold: f64,
) -> Vec<Individual> {
    let tags = filter_tags(population.len(), |k| population[k].fit, pairs, threshold);
    population
        .iter()
        .zip(tags)
        .filter(|(_, t)| !t)
        .map(|(ind, _)| {
            let mut ind = ind.clone();
            ind.tag = false;
            ind
        })
        .collect()
}

/// Stop conditions for the threshold decay loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayLimits {
    /// Decay stops once the threshold falls below this value.
    pub floor: f64,
    pub max_passes: usize,
}

impl DecayLimits {
    pub const DEFAULT_MAX_PASSES: usize = 200;

    /// Floor at `1e-12 * bandwidth`, at most 200 passes.
    pub fn for_bandwidth(bandwidth: f64) -> Self {
        Self {
            floor: 1e-12 * bandwidth,
            max_passes: Self::DEFAULT_MAX_PASSES,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurvivalOutcome {
    pub archive: Vec<Individual>,
    pub threshold: f64,
    /// Number of 10% threshold reductions applied.
    pub decays: usize,
    /// Slots filled with randomly picked old individuals after underflow.
    pub filled: usize,
}

/// One survival stage.
///
/// With an empty archive the offspring become the archive and the threshold
/// is returned unchanged. Otherwise the archive and the offspring are
/// filtered separately (always from their unfiltered state), joined, and the
/// threshold decays until the union holds at least `n = offspring.len()`
/// members. If the threshold underflows first, the shortfall is filled with
/// distinct unfiltered archive members picked at random (then offspring if
/// the archive runs out). The union is finally sorted by descending fitness
/// (stable) and truncated to `n`.
pub fn survive(
    offspring: &[Individual],
    archive: &[Individual],
    threshold: f64,
    limits: DecayLimits,
    rng: &mut RngStream,
) -> SurvivalOutcome {
    let n = offspring.len();
    if archive.is_empty() {
        return SurvivalOutcome {
            archive: offspring.to_vec(),
            threshold,
            decays: 0,
            filled: 0,
        };
    }

    let archive_pairs = close_pairs(archive, threshold);
    let offspring_pairs = close_pairs(offspring, threshold);

    let mut th = threshold;
    let mut decays = 0;
    let (keep_archive, keep_offspring) = loop {
        let ta = filter_tags(archive.len(), |k| archive[k].fit, &archive_pairs, th);
        let to = filter_tags(offspring.len(), |k| offspring[k].fit, &offspring_pairs, th);
        let survivors = ta.iter().chain(&to).filter(|t| !**t).count();
        if survivors >= n {
            break (ta, to);
        }
        if th * THRESHOLD_DECAY < limits.floor || decays >= limits.max_passes {
            break (ta, to);
        }
        th *= THRESHOLD_DECAY;
        decays += 1;
    };

    // (source, index): source 0 = offspring, 1 = archive. Offspring first, as in O' u A'.
    let mut chosen: Vec<(u8, usize)> = keep_offspring
        .iter()
        .enumerate()
        .filter(|(_, t)| !**t)
        .map(|(k, _)| (0u8, k))
        .chain(
            keep_archive
                .iter()
                .enumerate()
                .filter(|(_, t)| !**t)
                .map(|(k, _)| (1u8, k)),
        )
        .collect();

    let mut filled = 0;
    if chosen.len() < n {
        let mut pool: Vec<usize> = (0..archive.len()).filter(|&k| keep_archive[k]).collect();
        while chosen.len() < n && !pool.is_empty() {
            let pick = pool.swap_remove(rng.index(pool.len()));
            chosen.push((1, pick));
            filled += 1;
        }
        let mut pool: Vec<usize> = (0..offspring.len()).filter(|&k| keep_offspring[k]).collect();
        while chosen.len() < n && !pool.is_empty() {
            let pick = pool.swap_remove(rng.index(pool.len()));
            chosen.push((0, pick));
            filled += 1;
        }
    }

    let fit_of = |&(src, k): &(u8, usize)| {
        if src == 0 {
            offspring[k].fit
        } else {
            archive[k].fit
        }
    };
    chosen.sort_by(|a, b| fit_of(b).total_cmp(&fit_of(a)));
    chosen.truncate(n);

    let archive_out = chosen
        .iter()
        .map(|&(src, k)| {
            let mut ind = if src == 0 {
                offspring[k].clone()
            } else {
                archive[k].clone()
            };
            ind.tag = false;
            ind
        })
        .collect();

    SurvivalOutcome {
        archive: archive_out,
        threshold: th,
        decays,
        filled,
    }
}
