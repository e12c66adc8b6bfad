#![allow(dead_code)]

use mgp_bbbc::Problem;

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt()
}

/// Brute-force mean shift: each point is iterated to a fixed point of the
/// flat-kernel mean (shift below 1e-12), then modes within h/2 of an earlier
/// cluster's first mode join it. Returns member lists, each ascending,
/// ordered by their lowest member.
pub fn mean_shift_oracle(points: &[Vec<f64>], h: f64) -> Vec<Vec<usize>> {
    let mut modes = Vec::with_capacity(points.len());
    for p in points {
        let mut y = p.clone();
        for _ in 0..100_000 {
            let mut sum = vec![0.0; y.len()];
            let mut count = 0usize;
            for q in points {
                if dist(q, &y) <= h {
                    for (s, v) in sum.iter_mut().zip(q) {
                        *s += v;
                    }
                    count += 1;
                }
            }
            let next: Vec<f64> = sum.iter().map(|s| s / count as f64).collect();
            let step = dist(&next, &y);
            y = next;
            if step < 1e-12 {
                break;
            }
        }
        modes.push(y);
    }

    let mut reps: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, m) in modes.iter().enumerate() {
        match reps.iter().position(|&r| dist(&modes[r], m) <= h / 2.0) {
            Some(c) => groups[c].push(i),
            None => {
                reps.push(i);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Compass search maximizing `f` inside the box, independent of the library's.
pub fn polish(problem: &Problem, start: &[f64], step: f64) -> (Vec<f64>, f64) {
    let mut x = start.to_vec();
    let mut fx = problem.evaluate(&x);
    let mut step = step;
    while step > 1e-13 {
        let mut moved = false;
        for d in 0..x.len() {
            for sign in [1.0, -1.0] {
                let mut y = x.clone();
                y[d] = (y[d] + sign * step).clamp(problem.lower()[d], problem.upper()[d]);
                let fy = problem.evaluate(&y);
                if fy > fx {
                    x = y;
                    fx = fy;
                    moved = true;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (x, fx)
}

/// Grid oracle on a 1-D or 2-D box: every grid local maximum is polished,
/// those within `tol` of `fstar` are kept, and results closer than
/// `merge` are counted once. Returns the distinct optima.
pub fn grid_optima(problem: &Problem, cells: usize, fstar: f64, tol: f64, merge: f64) -> Vec<Vec<f64>> {
    let dim = problem.dim();
    assert!(dim == 1 || dim == 2);
    let lo = problem.lower();
    let hi = problem.upper();
    let coord = |d: usize, k: usize| lo[d] + (hi[d] - lo[d]) * k as f64 / cells as f64;
    let n = cells + 1;
    let ny = if dim == 2 { n } else { 1 };
    let mut values = vec![0.0; n * ny];
    for i in 0..n {
        for j in 0..ny {
            let x: Vec<f64> = if dim == 2 { vec![coord(0, i), coord(1, j)] } else { vec![coord(0, i)] };
            values[i * ny + j] = problem.evaluate(&x);
        }
    }

    let mut found: Vec<Vec<f64>> = Vec::new();
    for i in 0..n {
        for j in 0..ny {
            let v = values[i * ny + j];
            let mut is_max = true;
            for di in -1i64..=1 {
                for dj in -1i64..=1 {
                    if dim == 1 && dj != 0 {
                        continue;
                    }
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if (di, dj) == (0, 0) || a < 0 || b < 0 || a >= n as i64 || b >= ny as i64 {
                        continue;
                    }
                    if values[a as usize * ny + b as usize] > v {
                        is_max = false;
                    }
                }
            }
            if !is_max {
                continue;
            }
            let start: Vec<f64> = if dim == 2 { vec![coord(0, i), coord(1, j)] } else { vec![coord(0, i)] };
            let (x, fx) = polish(problem, &start, 0.5 * (hi[0] - lo[0]) / cells as f64);
            if fstar - fx <= tol && found.iter().all(|p| dist(p, &x) > merge) {
                found.push(x);
            }
        }
    }
    found
}
