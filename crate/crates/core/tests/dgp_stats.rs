// SPDX-License-Identifier: MIT OR Apache-2.0

//! Distributional sanity checks for the generators and the interval
//! sampler, all with frozen seeds.

use wbs2sdll_core::{
    draw_intervals, fit_ar1, mad_sigma, simulate_piecewise, simulate_random_walk, RngStream,
};

#[test]
fn random_walk_endpoint_variance_matches_the_clt() {
    // y_n / sqrt(n) should be standard normal; its sample variance over
    // 1000 replications must sit near 1.
    let n = 500usize;
    let reps = 1000usize;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for rep in 0..reps {
        let mut rng = RngStream::new(901, rep as u64);
        let x = simulate_random_walk(n, 1.0, 0.0, &mut rng).unwrap();
        let z = x.values()[n - 1] / (n as f64).sqrt();
        sum += z;
        sum_sq += z * z;
    }
    let mean = sum / reps as f64;
    let var = sum_sq / reps as f64 - mean * mean;
    assert!((0.85..=1.15).contains(&var), "var = {var}");
}

#[test]
fn walk_difference_scale_concentrates_near_sigma() {
    // Differences of a sigma = 1 walk are standard normal. mad_sigma
    // divides the median absolute difference by sqrt(2) * qnorm(3/4), so
    // the implied scale of the differences themselves is sigma * sqrt(2);
    // that estimate should rarely leave [0.8, 1.2].
    let seeds = 300;
    let mut inside = 0;
    for seed in 0..seeds {
        let mut rng = RngStream::new(4242, seed);
        let x = simulate_random_walk(500, 1.0, 0.0, &mut rng).unwrap();
        let diff_scale = mad_sigma(&x).unwrap().sigma * std::f64::consts::SQRT_2;
        if (0.8..=1.2).contains(&diff_scale) {
            inside += 1;
        }
    }
    assert!(inside * 100 >= seeds * 99, "inside = {inside}/{seeds}");
}

#[test]
fn piecewise_segment_means_concentrate_on_the_levels() {
    let breaks = [100usize];
    let levels = [0.0, 5.0];
    let mut rng = RngStream::new(17, 3);
    let x = simulate_piecewise(&breaks, &levels, 1.0, 200, &mut rng).unwrap();
    let first = &x.values()[..100];
    let second = &x.values()[100..];
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    assert!((mean(first) - 0.0).abs() <= 4.0 / 100f64.sqrt());
    assert!((mean(second) - 5.0).abs() <= 4.0 / 100f64.sqrt());
}

#[test]
fn interval_sampler_is_uniform_over_pairs() {
    // 10000 draws over a 20-point window: every one of the C(20,2) = 190
    // pairs should land within 3 standard errors of the uniform count.
    let m = 10_000usize;
    let mut rng = RngStream::new(5150, 0);
    let intervals = draw_intervals(0, 20, m, &mut rng).unwrap();
    let mut counts = std::collections::HashMap::new();
    for iv in &intervals[..m] {
        *counts.entry((iv.start(), iv.end())).or_insert(0usize) += 1;
    }
    let pairs = 190.0;
    let expected = m as f64 / pairs;
    let se = (m as f64 * (1.0 / pairs) * (1.0 - 1.0 / pairs)).sqrt();
    assert_eq!(counts.len(), 190);
    for (pair, count) in counts {
        let dev = (count as f64 - expected).abs();
        assert!(dev <= 3.0 * se, "pair {pair:?}: count {count}, expected {expected:.1}");
    }
}

#[test]
fn ar1_slope_on_random_walks_concentrates_near_unity() {
    let seeds = 200;
    let mut inside = 0;
    for seed in 0..seeds {
        let mut rng = RngStream::new(31337, seed);
        let x = simulate_random_walk(500, 1.0, 0.0, &mut rng).unwrap();
        let fit = fit_ar1(&x).unwrap();
        if (0.9..=1.05).contains(&fit.params[1]) {
            inside += 1;
        }
    }
    assert!(inside * 100 >= seeds * 95, "inside = {inside}/{seeds}");
}
