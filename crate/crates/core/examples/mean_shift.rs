//! Flat-kernel mean-shift clustering on its own.
//!
//! Three Gaussian-ish blobs plus scattered noise; prints the clusters found
//! for a few bandwidths.
//!
//! ```text
//! cargo run --release --example mean_shift
//! ```

use mgp_bbbc::clustering::mean_shift;
use mgp_bbbc::RngStream;

fn main() {
    let mut rng = RngStream::new(4);
    let centers = [[0.2, 0.2], [0.8, 0.3], [0.5, 0.85]];
    let mut points = Vec::new();
    for c in &centers {
        for _ in 0..40 {
            points.push(vec![c[0] + 0.05 * rng.symmetric_unit(), c[1] + 0.05 * rng.symmetric_unit()]);
        }
    }
    for _ in 0..10 {
        points.push(vec![rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)]);
    }

    for h in [0.05, 0.15, 0.3, 0.8] {
        let clusters = mean_shift(&points, h);
        println!("h = {h}: {} clusters", clusters.len());
        let mut order: Vec<usize> = (0..clusters.len()).collect();
        order.sort_by_key(|&c| std::cmp::Reverse(clusters.sizes[c]));
        for &c in order.iter().take(5) {
            let m = &clusters.modes[c];
            println!("  size {:>3}  mode ({:.3}, {:.3})", clusters.sizes[c], m[0], m[1]);
        }
    }
}
