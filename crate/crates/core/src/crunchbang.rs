//! Contraction and expansion operators.
//!
//! The big crunch reduces the archive to one center of mass per mean-shift
//! cluster (its best member) and decides how many offspring each center gets.
//! The big bang scatters those offspring around their centers with an extent
//! that shrinks logarithmically for the first 60% of generations and then
//! steps through fixed accuracy levels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::clustering::mean_shift;
use crate::error::Error;
use crate::problem::{Individual, Problem};
use crate::rng::RngStream;
use crate::survival::euclidean;

/// Share of generations spent exploring.
pub const EXPLORATION_SHARE: f64 = 0.6;

/// Absolute extents used during exploitation, one plateau each.
pub const EXPLOITATION_LEVELS: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];

/// Volume ratio used for the very first spread-based bandwidth when the
/// initial population is degenerate.
pub const SPREAD_FALLBACK_VOLUME_RATIO: f64 = 2000.0;

#[derive(Debug, Clone, PartialEq)]
pub struct CenterOfMass {
    pub x: Vec<f64>,
    pub fit: f64,
    pub niche_count: usize,
}

/// Per-dimension extent of expansion at generation `it` of `g` (1-based).
pub fn get_extent(it: usize, g: usize, problem: &Problem) -> Vec<f64> {
    ExtentSchedule::new(g, problem).extent(it)
}

/// Two-phase extent schedule for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtentSchedule {
    generations: usize,
    start: Vec<f64>,
}

impl ExtentSchedule {
    pub fn new(generations: usize, problem: &Problem) -> Self {
        let start = problem
            .lower()
            .iter()
            .zip(problem.upper())
            .map(|(lo, hi)| (hi - lo) / 4.0)
            .collect();
        Self { generations, start }
    }

    pub fn generations(&self) -> usize {
        self.generations
    }

    /// Quarter of the box side, per dimension.
    pub fn start(&self) -> &[f64] {
        &self.start
    }

    /// First generation of the exploitation phase.
    pub fn exploitation_start(&self) -> usize {
        (EXPLORATION_SHARE * self.generations as f64).ceil() as usize
    }

    /// Length of each exploitation plateau.
    pub fn plateau(&self) -> usize {
        ((1.0 - EXPLORATION_SHARE) * self.generations as f64 / EXPLOITATION_LEVELS.len() as f64)
            .floor()
            .max(1.0) as usize
    }

    pub fn is_exploring(&self, it: usize) -> bool {
        (it as f64) < EXPLORATION_SHARE * self.generations as f64
    }

    pub fn extent(&self, it: usize) -> Vec<f64> {
        let g = self.generations as f64;
        let first = EXPLOITATION_LEVELS[0];
        if self.is_exploring(it) {
            let denom = (EXPLORATION_SHARE * g).ln();
            let t = ((it + 1) as f64).ln();
            self.start
                .iter()
                .map(|&e1| {
                    let slope = (e1 - first) / denom;
                    // for non-integer 0.6g the last exploring step overshoots slightly
                    (e1 - slope * t).max(first.min(e1))
                })
                .collect()
        } else {
            let k = 1 + it.saturating_sub(self.exploitation_start()) / self.plateau();
            let level = EXPLOITATION_LEVELS[k.min(EXPLOITATION_LEVELS.len()) - 1];
            vec![level; self.start.len()]
        }
    }
}

/// Splits `n` offspring among centers with niche counts `niche_counts`.
///
/// Every center starts at `round(mean)`. A shortfall is handed out one by
/// one to random centers whose niche count is at most `floor(mean)`; an
/// excess is taken back from random centers whose niche count is at least
/// `floor(mean)`. Isolated centers therefore receive more than their
/// population share. Each guarded draw is retried up to `10 * len` times,
/// after which any center is accepted; an entry is never decremented below 0.
pub fn offspring_per_com(n: usize, niche_counts: &[usize], rng: &mut RngStream) -> Vec<usize> {
    assert!(!niche_counts.is_empty(), "at least one center is required");
    let m = niche_counts.len();
    let avg = niche_counts.iter().sum::<usize>() as f64 / m as f64;
    let floor_avg = avg.floor() as usize;
    let mut opc = vec![avg.round() as usize; m];
    let total: usize = opc.iter().sum();
    let cap = 10 * m;

    if total < n {
        for _ in 0..n - total {
            let mut draws = 0;
            let j = loop {
                let j = rng.index(m);
                draws += 1;
                if niche_counts[j] <= floor_avg || draws >= cap {
                    break j;
                }
            };
            opc[j] += 1;
        }
    } else if total > n {
        for _ in 0..total - n {
            let mut draws = 0;
            let j = loop {
                let j = rng.index(m);
                draws += 1;
                if opc[j] > 0 && (niche_counts[j] >= floor_avg || draws >= cap) {
                    break j;
                }
            };
            opc[j] -= 1;
        }
    }
    opc
}

/// Clusters the archive and returns one center of mass per cluster together
/// with the offspring allocation (summing to `archive.len()`).
pub fn big_crunch(
    archive: &[Individual],
    h: f64,
    rng: &mut RngStream,
) -> (Vec<CenterOfMass>, Vec<usize>) {
    let points: Vec<Vec<f64>> = archive.iter().map(|i| i.x.clone()).collect();
    let clusters = mean_shift(&points, h);
    let mut coms = Vec::with_capacity(clusters.len());
    let mut niche_counts = Vec::with_capacity(clusters.len());
    for members in clusters.members() {
        let mut best = members[0];
        for &j in &members {
            if archive[best].fit < archive[j].fit {
                best = j;
            }
        }
        coms.push(CenterOfMass {
            x: archive[best].x.clone(),
            fit: archive[best].fit,
            niche_count: members.len(),
        });
        niche_counts.push(members.len());
    }
    let opc = offspring_per_com(archive.len(), &niche_counts, rng);
    (coms, opc)
}

/// Generates `opc[i]` offspring around each center, uniformly within the
/// generation's extent per dimension, clamped to the box.
pub fn big_bang(
    coms: &[CenterOfMass],
    it: usize,
    g: usize,
    opc: &[usize],
    problem: &Problem,
    rng: &mut RngStream,
) -> Vec<Individual> {
    let extent = get_extent(it, g, problem);
    big_bang_with_extent(coms, opc, &extent, problem, rng)
}

pub fn big_bang_with_extent(
    coms: &[CenterOfMass],
    opc: &[usize],
    extent: &[f64],
    problem: &Problem,
    rng: &mut RngStream,
) -> Vec<Individual> {
    assert_eq!(coms.len(), opc.len(), "one offspring count per center");
    let mut out = Vec::with_capacity(opc.iter().sum());
    for (com, &count) in coms.iter().zip(opc) {
        for _ in 0..count {
            let mut x: Vec<f64> = com
                .x
                .iter()
                .zip(extent)
                .map(|(c, e)| c + e * rng.symmetric_unit())
                .collect();
            problem.clamp(&mut x);
            out.push(Individual::unevaluated(x));
        }
    }
    out
}

/// Bandwidth whose hypersphere occupies `1 / ratio` of the search box.
pub fn bandwidth_from_volume_ratio(problem: &Problem, ratio: f64) -> f64 {
    let d = problem.dim() as f64;
    let unit_ball = std::f64::consts::PI.powf(d / 2.0) / libm::tgamma(d / 2.0 + 1.0);
    (problem.volume() / (unit_ball * ratio)).powf(1.0 / d)
}

/// Largest pairwise distance of `population`, divided by `ratio`.
pub fn bandwidth_from_spread(population: &[Individual], ratio: f64) -> f64 {
    let mut max = 0.0f64;
    for (i, a) in population.iter().enumerate() {
        for b in &population[i + 1..] {
            max = max.max(euclidean(&a.x, &b.x));
        }
    }
    max / ratio
}

/// How the clustering bandwidth is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum BandwidthStrategy {
    Fixed(f64),
    /// Ratio of the search-box volume to the bandwidth-ball volume.
    VolumeRatio(f64),
    /// Ratio of the archive's largest pairwise distance to the bandwidth,
    /// re-evaluated every generation.
    SpreadRatio(f64),
}

impl BandwidthStrategy {
    /// Bandwidth for the initial population (before any evaluation).
    pub fn initial(&self, problem: &Problem, population: &[Individual]) -> f64 {
        match *self {
            BandwidthStrategy::Fixed(h) => h,
            BandwidthStrategy::VolumeRatio(r) => bandwidth_from_volume_ratio(problem, r),
            BandwidthStrategy::SpreadRatio(r) => {
                let h = bandwidth_from_spread(population, r);
                if h > 0.0 {
                    h
                } else {
                    bandwidth_from_volume_ratio(problem, SPREAD_FALLBACK_VOLUME_RATIO)
                }
            }
        }
    }

    /// Bandwidth for the current generation; `previous` is the last value used.
    pub fn update(&self, previous: f64, population: &[Individual]) -> f64 {
        match *self {
            BandwidthStrategy::SpreadRatio(r) => {
                let h = bandwidth_from_spread(population, r);
                if h > 0.0 {
                    h
                } else {
                    previous
                }
            }
            _ => previous,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let v = match *self {
            BandwidthStrategy::Fixed(v)
            | BandwidthStrategy::VolumeRatio(v)
            | BandwidthStrategy::SpreadRatio(v) => v,
        };
        if v.is_finite() && v > 0.0 {
            Ok(())
        } else {
            Err(Error::Config(format!("bandwidth `{self}` must be positive and finite")))
        }
    }
}

impl fmt::Display for BandwidthStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BandwidthStrategy::Fixed(h) => write!(f, "{h}"),
            BandwidthStrategy::VolumeRatio(r) => write!(f, "vol:{r}"),
            BandwidthStrategy::SpreadRatio(r) => write!(f, "spread:{r}"),
        }
    }
}

impl FromStr for BandwidthStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |v: &str| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("cannot parse bandwidth `{s}`")))
        };
        let strategy = if let Some(r) = s.strip_prefix("vol:") {
            BandwidthStrategy::VolumeRatio(parse(r)?)
        } else if let Some(r) = s.strip_prefix("spread:") {
            BandwidthStrategy::SpreadRatio(parse(r)?)
        } else {
            BandwidthStrategy::Fixed(parse(s)?)
        };
        strategy.validate()?;
        Ok(strategy)
    }
}

impl TryFrom<String> for BandwidthStrategy {
    type Error = Error;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<BandwidthStrategy> for String {
    fn from(value: BandwidthStrategy) -> Self {
        value.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(lower: Vec<f64>, upper: Vec<f64>) -> Problem {
        Problem::new("box", lower, upper, |x| -x.iter().map(|v| v * v).sum::<f64>()).unwrap()
    }

    #[test]
    fn first_exploration_step() {
        let p = boxed(vec![0.0], vec![10.0]);
        let e = get_extent(1, 100, &p)[0];
        let a = (2.5 - 0.1) / 60f64.ln();
        assert!((a - 0.5862).abs() < 1e-4);
        assert!((e - (2.5 - a * 2f64.ln())).abs() < 1e-12);
        assert!((e - 2.0937).abs() < 1e-4);
    }

    #[test]
    fn exploration_ends_at_first_level() {
        let p = boxed(vec![0.0, -3.0], vec![10.0, 3.0]);
        for e in get_extent(59, 100, &p) {
            assert!((e - 0.1).abs() < 1e-9);
        }
        assert_eq!(get_extent(60, 100, &p), vec![0.1, 0.1]);
    }

    #[test]
    fn exploitation_ladder() {
        let p = boxed(vec![0.0], vec![10.0]);
        let s = ExtentSchedule::new(100, &p);
        assert_eq!(s.plateau(), 8);
        assert_eq!(s.extent(95), vec![1e-5]);
        assert_eq!(s.extent(67), vec![1e-1]);
        assert_eq!(s.extent(68), vec![1e-2]);
        assert_eq!(s.extent(84), vec![1e-4]);
        assert_eq!(s.extent(100), vec![1e-5]);
    }

    #[test]
    fn anisotropic_start() {
        let p = boxed(vec![-1.9, -1.1], vec![1.9, 1.1]);
        let s = ExtentSchedule::new(50, &p);
        assert_eq!(s.start(), &[0.95, 0.55]);
    }

    #[test]
    fn opc_even_split() {
        let mut r = RngStream::new(0);
        assert_eq!(offspring_per_com(20, &[5, 5, 5, 5], &mut r), vec![5, 5, 5, 5]);
    }

    #[test]
    fn opc_promotes_small_niche() {
        let mut r = RngStream::new(0);
        assert_eq!(offspring_per_com(10, &[8, 2], &mut r), vec![5, 5]);
    }

    #[test]
    fn opc_half_rounds_up_then_decrements() {
        let mut seen = [false; 2];
        for seed in 0..64 {
            let opc = offspring_per_com(5, &[3, 2], &mut RngStream::new(seed));
            assert_eq!(opc.iter().sum::<usize>(), 5);
            assert!(opc.iter().all(|&c| c == 2 || c == 3));
            seen[if opc[0] == 2 { 0 } else { 1 }] = true;
        }
        assert!(seen[0] && seen[1], "both outcomes should occur across seeds");
    }

    #[test]
    fn opc_never_negative_when_n_is_small() {
        let opc = offspring_per_com(1, &[4, 4, 4], &mut RngStream::new(5));
        assert_eq!(opc.iter().sum::<usize>(), 1);
    }

    fn ind(x: &[f64], fit: f64) -> Individual {
        Individual::with_fitness(x.to_vec(), fit)
    }

    #[test]
    fn crunch_single_individual() {
        let a = vec![ind(&[1.0, 2.0], 3.0)];
        let (coms, opc) = big_crunch(&a, 0.5, &mut RngStream::new(0));
        assert_eq!(coms, vec![CenterOfMass { x: vec![1.0, 2.0], fit: 3.0, niche_count: 1 }]);
        assert_eq!(opc, vec![1]);
    }

    #[test]
    fn crunch_picks_group_bests() {
        let mut a = Vec::new();
        for k in 0..5 {
            a.push(ind(&[0.001 * k as f64], if k == 3 { 10.0 } else { 1.0 }));
            a.push(ind(&[20.0 + 0.001 * k as f64], if k == 1 { 7.0 } else { 2.0 }));
        }
        let (coms, opc) = big_crunch(&a, 1.0, &mut RngStream::new(0));
        let fits: Vec<f64> = coms.iter().map(|c| c.fit).collect();
        assert_eq!(fits, vec![10.0, 7.0]);
        assert_eq!(opc, vec![5, 5]);
    }

    #[test]
    fn crunch_ties_keep_first() {
        let a = vec![ind(&[0.0], 1.0), ind(&[0.01], 5.0), ind(&[0.02], 5.0)];
        let (coms, _) = big_crunch(&a, 1.0, &mut RngStream::new(0));
        assert_eq!(coms.len(), 1);
        assert_eq!(coms[0].x, vec![0.01]);
    }

    #[test]
    fn bang_respects_counts_and_extent() {
        let p = boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let coms = vec![
            CenterOfMass { x: vec![0.5, 0.5], fit: 0.0, niche_count: 1 },
            CenterOfMass { x: vec![0.2, 0.7], fit: 0.0, niche_count: 1 },
        ];
        let off = big_bang_with_extent(&coms, &[0, 40], &[0.1, 0.1], &p, &mut RngStream::new(1));
        assert_eq!(off.len(), 40);
        for o in &off {
            assert!((o.x[0] - 0.2).abs() <= 0.1 && (o.x[1] - 0.7).abs() <= 0.1);
        }
    }

    #[test]
    fn bang_clamps_toward_center() {
        let p = boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let coms = vec![CenterOfMass { x: vec![0.0, 0.5], fit: 0.0, niche_count: 1 }];
        let off = big_bang_with_extent(&coms, &[10_000], &[0.3, 0.3], &p, &mut RngStream::new(2));
        let mut at_bound = 0;
        for o in &off {
            assert!(p.contains(&o.x));
            assert!(o.x[0] <= 0.3 && (o.x[1] - 0.5).abs() <= 0.3);
            if o.x[0] == 0.0 {
                at_bound += 1;
            }
        }
        // about half of the draws fall below the bound and are clamped onto it
        assert!((4_000..6_000).contains(&at_bound), "{at_bound}");
    }

    #[test]
    fn volume_ratio_closed_forms() {
        let p1 = boxed(vec![0.0], vec![10.0]);
        assert!((bandwidth_from_volume_ratio(&p1, 10.0) - 0.5).abs() < 1e-12);
        let p2 = boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        assert!((bandwidth_from_volume_ratio(&p2, 1.0 / std::f64::consts::PI) - 1.0).abs() < 1e-12);
        let p3 = boxed(vec![0.0, 0.0, 0.0], vec![1.0, 2.0, 3.0]);
        let p3x2 = boxed(vec![0.0, 0.0, 0.0], vec![2.0, 4.0, 6.0]);
        let (a, b) = (bandwidth_from_volume_ratio(&p3, 50.0), bandwidth_from_volume_ratio(&p3x2, 50.0));
        assert!((b - 2.0 * a).abs() < 1e-12);
    }

    #[test]
    fn spread_examples() {
        let pop = vec![ind(&[0.0, 0.0], 0.0), ind(&[3.0, 4.0], 0.0)];
        assert_eq!(bandwidth_from_spread(&pop, 5.0), 1.0);
        let scaled = vec![ind(&[0.0, 0.0], 0.0), ind(&[6.0, 8.0], 0.0)];
        assert_eq!(bandwidth_from_spread(&scaled, 5.0), 2.0);
        let mut more = pop.clone();
        more.push(ind(&[1.0, 1.0], 0.0));
        assert_eq!(bandwidth_from_spread(&more, 5.0), 1.0);
    }

    #[test]
    fn degenerate_spread_falls_back() {
        let p = boxed(vec![0.0, 0.0], vec![1.0, 1.0]);
        let pop = vec![ind(&[0.5, 0.5], 0.0); 3];
        let s = BandwidthStrategy::SpreadRatio(4.0);
        let h0 = s.initial(&p, &pop);
        assert_eq!(h0, bandwidth_from_volume_ratio(&p, 2000.0));
        assert_eq!(s.update(0.25, &pop), 0.25);
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("0.8".parse::<BandwidthStrategy>().unwrap(), BandwidthStrategy::Fixed(0.8));
        assert_eq!("vol:2000".parse::<BandwidthStrategy>().unwrap(), BandwidthStrategy::VolumeRatio(2000.0));
        assert_eq!("spread:3".parse::<BandwidthStrategy>().unwrap(), BandwidthStrategy::SpreadRatio(3.0));
        assert!("-1".parse::<BandwidthStrategy>().is_err());
        assert!("vol:x".parse::<BandwidthStrategy>().is_err());
        let s = BandwidthStrategy::SpreadRatio(12.5);
        assert_eq!(s.to_string().parse::<BandwidthStrategy>().unwrap(), s);
    }
}
