//! Flat-kernel mean-shift clustering.
//!
//! Every point climbs to a local density mode by repeatedly moving to the
//! mean of the original points within distance `h` of its current position.
//! Points whose modes end up within `h / 2` of each other share a cluster.

use rayon::prelude::*;

/// Result of [`mean_shift`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterSet {
    /// Cluster id of every input point.
    pub assignments: Vec<usize>,
    /// Converged position of the first (lowest-index) member of each cluster.
    pub modes: Vec<Vec<f64>>,
    /// Niche count of each cluster.
    pub sizes: Vec<usize>,
}

impl ClusterSet {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Member indices of every cluster, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.len()];
        for (i, &c) in self.assignments.iter().enumerate() {
            out[c].push(i);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanShiftParams {
    /// A trajectory stops once its step is shorter than `tolerance * h`.
    pub tolerance: f64,
    pub max_iter: usize,
    /// Modes closer than `merge * h` are merged.
    pub merge: f64,
}

impl Default for MeanShiftParams {
    fn default() -> Self {
        Self {
            tolerance: 1e-3,
            max_iter: 500,
            merge: 0.5,
        }
    }
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum()
}

fn shift_to_mode(start: &[f64], points: &[Vec<f64>], h: f64, params: &MeanShiftParams) -> Vec<f64> {
    let dim = start.len();
    let h2 = h * h;
    let tol2 = (params.tolerance * h) * (params.tolerance * h);
    let mut y = start.to_vec();
    let mut mean = vec![0.0; dim];
    for _ in 0..params.max_iter {
        mean.iter_mut().for_each(|m| *m = 0.0);
        let mut count = 0usize;
        for p in points {
            if dist2(p, &y) <= h2 {
                for (m, v) in mean.iter_mut().zip(p) {
                    *m += v;
                }
                count += 1;
            }
        }
        if count == 0 {
            break;
        }
        let inv = 1.0 / count as f64;
        mean.iter_mut().for_each(|m| *m *= inv);
        let step = dist2(&mean, &y);
        std::mem::swap(&mut y, &mut mean);
        if step < tol2 {
            break;
        }
    }
    y
}

/// Clusters `points` with bandwidth `h`.
///
/// Cluster ids follow the lowest input index they contain. Panics if `h` is
/// not positive.
pub fn mean_shift(points: &[Vec<f64>], h: f64) -> ClusterSet {
    mean_shift_with(points, h, &MeanShiftParams::default())
}

pub fn mean_shift_with(points: &[Vec<f64>], h: f64, params: &MeanShiftParams) -> ClusterSet {
    assert!(h > 0.0, "bandwidth must be positive, got {h}");
    let converged: Vec<Vec<f64>> = points
        .par_iter()
        .map(|p| shift_to_mode(p, points, h, params))
        .collect();

    let merge2 = (params.merge * h) * (params.merge * h);
    let mut modes: Vec<Vec<f64>> = Vec::new();
    let mut sizes = Vec::new();
    let mut assignments = Vec::with_capacity(points.len());
    for y in converged {
        match modes.iter().position(|m| dist2(m, &y) < merge2) {
            Some(c) => {
                assignments.push(c);
                sizes[c] += 1;
            }
            None => {
                assignments.push(modes.len());
                modes.push(y);
                sizes.push(1);
            }
        }
    }
    ClusterSet {
        assignments,
        modes,
        sizes,
    }
}
