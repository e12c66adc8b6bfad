//! Peak counting, peak ratio and success ratio.

use serde::{Deserialize, Serialize};

use crate::benchmarks::PeakRegistry;
use crate::problem::Individual;
use crate::survival::euclidean;

/// Accuracy levels reported by default, loosest first.
pub const DEFAULT_ACCURACY_LEVELS: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunResult {
    pub npf: usize,
    pub tnp: usize,
    /// Registry indices of the claimed peaks, in claim order.
    pub found_peaks: Vec<usize>,
    pub success: bool,
}

/// Counts the global peaks found in `archive` at accuracy `epsilon`.
///
/// Candidates are members with `fstar - fit <= epsilon`, scanned best first
/// (ties by archive index). Each candidate claims the nearest still-unclaimed
/// registered peak within the niche radius, if any.
pub fn count_peaks(archive: &[Individual], registry: &PeakRegistry, epsilon: f64) -> RunResult {
    let mut candidates: Vec<usize> = (0..archive.len())
        .filter(|&k| registry.fstar - archive[k].fit <= epsilon)
        .collect();
    candidates.sort_by(|&a, &b| archive[b].fit.total_cmp(&archive[a].fit));

    let tnp = registry.tnp();
    let mut claimed = vec![false; tnp];
    let mut found_peaks = Vec::new();
    for k in candidates {
        if found_peaks.len() == tnp {
            break;
        }
        let x = &archive[k].x;
        let nearest = registry
            .peaks
            .iter()
            .enumerate()
            .filter(|(p, _)| !claimed[*p])
            .map(|(p, loc)| (p, euclidean(x, loc)))
            .filter(|(_, d)| *d <= registry.radius)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((p, _)) = nearest {
            claimed[p] = true;
            found_peaks.push(p);
        }
    }
    RunResult {
        npf: found_peaks.len(),
        tnp,
        success: found_peaks.len() == tnp,
        found_peaks,
    }
}

/// Total peaks found over all runs divided by `tnp * runs`.
pub fn peak_ratio(npf_per_run: &[usize], tnp: usize) -> f64 {
    assert!(!npf_per_run.is_empty() && tnp > 0);
    npf_per_run.iter().sum::<usize>() as f64 / (tnp * npf_per_run.len()) as f64
}

/// Fraction of runs that found every peak.
pub fn success_ratio(results: &[RunResult]) -> f64 {
    assert!(!results.is_empty());
    results.iter().filter(|r| r.success).count() as f64 / results.len() as f64
}
