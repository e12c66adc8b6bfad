mod common;

use mgp_bbbc::clustering::mean_shift;
use mgp_bbbc::crunchbang::{big_bang_with_extent, big_crunch, offspring_per_com, CenterOfMass, ExtentSchedule};
use mgp_bbbc::metrics::count_peaks;
use mgp_bbbc::problem::Individual;
use mgp_bbbc::survival::{filter_population, pairwise_distances, survive, DecayLimits};
use mgp_bbbc::{make_benchmark, BenchmarkId, Problem, RngStream};
use proptest::prelude::*;

fn population(max_n: usize, max_dim: usize) -> impl Strategy<Value = Vec<Individual>> {
    (1..=max_dim).prop_flat_map(move |dim| {
        prop::collection::vec(
            (prop::collection::vec(0.0..1.0f64, dim), 0u8..6).prop_map(|(x, f)| Individual::with_fitness(x, f as f64)),
            2..=max_n,
        )
    })
}

fn best(pop: &[Individual]) -> f64 {
    pop.iter().map(|i| i.fit).fold(f64::NEG_INFINITY, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn filtered_survivors_are_separated(pop in population(64, 5), th in 0.01..0.7f64) {
        let kept = filter_population(&pop, &pairwise_distances(&pop), th);
        prop_assert!(pairwise_distances(&kept).iter().all(|p| p.dist >= th));
        prop_assert_eq!(best(&kept), best(&pop));
    }

    #[test]
    fn survival_contract(
        (offspring, archive) in (1usize..=5).prop_flat_map(|dim| {
            let one = (prop::collection::vec(0.0..1.0f64, dim), 0u8..6)
                .prop_map(|(x, f)| Individual::with_fitness(x, f as f64));
            (2usize..=40).prop_flat_map(move |n| {
                (prop::collection::vec(one.clone(), n), prop::collection::vec(one.clone(), n))
            })
        }),
        th in 0.01..1.0f64,
        seed in any::<u64>(),
    ) {
        let mut rng = RngStream::new(seed);
        let out = survive(&offspring, &archive, th, DecayLimits::for_bandwidth(th), &mut rng);
        prop_assert_eq!(out.archive.len(), offspring.len());
        prop_assert!(out.threshold <= th);
        prop_assert_eq!(best(&out.archive), best(&offspring).max(best(&archive)));
        prop_assert!(out.archive.windows(2).all(|w| w[0].fit >= w[1].fit));
    }

    #[test]
    fn mean_shift_is_a_partition(
        points in (1usize..=3).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(-1.0..1.0f64, d), 1..40)),
        h in 0.05..1.5f64,
    ) {
        let c = mean_shift(&points, h);
        prop_assert_eq!(c.assignments.len(), points.len());
        prop_assert_eq!(c.sizes.iter().sum::<usize>(), points.len());
        let members = c.members();
        let mut seen: Vec<usize> = members.concat();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..points.len()).collect::<Vec<_>>());
        prop_assert!(members.windows(2).all(|w| w[0][0] < w[1][0]));
    }

    #[test]
    fn mean_shift_matches_oracle(
        points in (1usize..=3).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(0.0..1.0f64, d), 1..=12)),
        h in 0.05..0.8f64,
    ) {
        prop_assert_eq!(mean_shift(&points, h).members(), common::mean_shift_oracle(&points, h));
    }

    #[test]
    fn mean_shift_scale_equivariant(
        points in (1usize..=3).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(0.0..1.0f64, d), 1..=20)),
        h in 0.05..0.8f64,
        scale in prop::sample::select(vec![0.25, 0.5, 2.0, 4.0, 8.0]),
    ) {
        let scaled: Vec<Vec<f64>> = points.iter().map(|p| p.iter().map(|v| v * scale).collect()).collect();
        prop_assert_eq!(mean_shift(&points, h).assignments, mean_shift(&scaled, h * scale).assignments);
    }

    #[test]
    fn offspring_allocation_is_valid(
        counts in prop::collection::vec(1usize..60, 1..200),
        seed in any::<u64>(),
    ) {
        let n: usize = counts.iter().sum();
        let mut rng = RngStream::new(seed);
        let opc = offspring_per_com(n, &counts, &mut rng);
        prop_assert_eq!(opc.len(), counts.len());
        prop_assert_eq!(opc.iter().sum::<usize>(), n);
    }

    #[test]
    fn peak_count_monotone_in_epsilon(
        xs in prop::collection::vec((-6.0..6.0f64, -6.0..6.0f64), 1..80),
        seed in any::<u64>(),
    ) {
        let spec = make_benchmark(BenchmarkId::F4);
        let mut rng = RngStream::new(seed);
        // mix random points with perturbed peaks so candidates exist
        let mut archive: Vec<Individual> = xs.iter().map(|&(a, b)| {
            let x = vec![a, b];
            Individual::with_fitness(x.clone(), spec.problem.evaluate(&x))
        }).collect();
        for p in &spec.registry.peaks {
            let x: Vec<f64> = p.iter().map(|v| v + 1e-3 * rng.symmetric_unit()).collect();
            archive.push(Individual::with_fitness(x.clone(), spec.problem.evaluate(&x)));
        }
        let levels = [1e0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5];
        let npf: Vec<usize> = levels.iter().map(|&e| count_peaks(&archive, &spec.registry, e).npf).collect();
        prop_assert!(npf.windows(2).all(|w| w[0] >= w[1]));
        for &e in &levels {
            let r = count_peaks(&archive, &spec.registry, e);
            let mut claimed = r.found_peaks.clone();
            claimed.sort_unstable();
            claimed.dedup();
            prop_assert_eq!(claimed.len(), r.npf);
        }
    }

    #[test]
    fn peak_count_permutation_invariant(
        xs in prop::collection::vec((0.0..1.0f64, 0.0..1.0f64), 1..60),
        seed in any::<u64>(),
    ) {
        let spec = make_benchmark(BenchmarkId::F10);
        let mut archive: Vec<Individual> = xs.iter().map(|&(a, b)| {
            let x = vec![a, b];
            Individual::with_fitness(x.clone(), spec.problem.evaluate(&x))
        }).collect();
        for p in &spec.registry.peaks {
            archive.push(Individual::with_fitness(p.clone(), spec.problem.evaluate(p)));
        }
        let before = count_peaks(&archive, &spec.registry, 1e-1).npf;
        let mut rng = RngStream::new(seed);
        for i in (1..archive.len()).rev() {
            let j = rng.index(i + 1);
            archive.swap(i, j);
        }
        prop_assert_eq!(count_peaks(&archive, &spec.registry, 1e-1).npf, before);
    }
}

#[test]
fn offspring_allocation_random_cases() {
    let mut rng = RngStream::new(99);
    for _ in 0..1000 {
        let n = 1 + rng.index(1000);
        let m = 1 + rng.index(n);
        let counts: Vec<usize> = (0..m).map(|_| 1 + rng.index(50)).collect();
        let opc = offspring_per_com(n, &counts, &mut rng);
        assert_eq!(opc.iter().sum::<usize>(), n, "n={n} counts={counts:?}");
    }
}

#[test]
fn smallest_niche_gets_at_least_the_largest_share() {
    let mut vectors = RngStream::new(5);
    for _ in 0..1000 {
        let m = 2 + vectors.index(8);
        let mut counts: Vec<usize> = Vec::new();
        while counts.len() < m {
            let c = 1 + vectors.index(40);
            if !counts.contains(&c) {
                counts.push(c);
            }
        }
        let n: usize = counts.iter().sum();
        let small = (0..m).min_by_key(|&k| counts[k]).unwrap();
        let large = (0..m).max_by_key(|&k| counts[k]).unwrap();
        let mut swapped = counts.clone();
        swapped.swap(small, large);
        // each seed is used with both placements of the two centers
        let (mut s, mut l) = (0usize, 0usize);
        for seed in 0..10_000u64 {
            let opc = offspring_per_com(n, &counts, &mut RngStream::new(seed));
            let opc_swapped = offspring_per_com(n, &swapped, &mut RngStream::new(seed));
            s += opc[small] + opc_swapped[large];
            l += opc[large] + opc_swapped[small];
        }
        assert!(s >= l, "counts={counts:?}: smallest {s} < largest {l}");
    }
}

#[test]
fn extent_never_increases_and_keeps_floor() {
    let spec = make_benchmark(BenchmarkId::F9);
    for g in [1usize, 2, 3, 7, 10, 11, 33, 50, 99, 100, 400, 1000] {
        let schedule = ExtentSchedule::new(g, &spec.problem);
        let mut prev = schedule.extent(1);
        for it in 2..=g {
            let e = schedule.extent(it);
            assert!(e.iter().zip(&prev).all(|(a, b)| a <= b), "g={g} it={it}");
            assert!(e.iter().all(|&v| v >= 1e-5));
            prev = e;
        }
        if g >= 10 {
            assert_eq!(schedule.extent(g), vec![1e-5; 3], "g={g}");
        }
    }
}

#[test]
fn offspring_stay_within_bounds_and_extent() {
    let problem = Problem::new("box", vec![0.0, -1.0], vec![1.0, 1.0], |x: &[f64]| x[0]).unwrap();
    let coms = vec![
        CenterOfMass { x: vec![0.0, -1.0], fit: 0.0, niche_count: 3 },
        CenterOfMass { x: vec![0.5, 0.2], fit: 0.5, niche_count: 2 },
        CenterOfMass { x: vec![1.0, 1.0], fit: 1.0, niche_count: 1 },
    ];
    let opc = [400, 300, 300];
    let mut rng = RngStream::new(17);
    for extent in [vec![0.3, 0.6], vec![1e-3, 1e-3]] {
        for _ in 0..10 {
            let offspring = big_bang_with_extent(&coms, &opc, &extent, &problem, &mut rng);
            assert_eq!(offspring.len(), 1000);
            let mut k = 0;
            for (c, &count) in coms.iter().zip(&opc) {
                for child in &offspring[k..k + count] {
                    assert!(problem.contains(&child.x));
                    for d in 0..2 {
                        assert!((child.x[d] - c.x[d]).abs() <= extent[d]);
                    }
                }
                k += count;
            }
        }
    }
}

#[test]
fn crunch_allocates_whole_archive() {
    let spec = make_benchmark(BenchmarkId::F4);
    let mut rng = RngStream::new(8);
    let archive: Vec<Individual> = (0..300)
        .map(|_| {
            let x = vec![rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0)];
            let f = spec.problem.evaluate(&x);
            Individual::with_fitness(x, f)
        })
        .collect();
    let (coms, opc) = big_crunch(&archive, 0.8, &mut rng);
    assert_eq!(coms.len(), opc.len());
    assert_eq!(opc.iter().sum::<usize>(), archive.len());
    assert_eq!(coms.iter().map(|c| c.niche_count).sum::<usize>(), archive.len());
}
