// SPDX-License-Identifier: MIT OR Apache-2.0

//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured statistics (visible with `--nocapture`). Bands, counts and
//! tolerances are frozen here; the detector constants they were calibrated
//! against live in `SdllConfig::default()`.

use std::fs;

use tempfile::TempDir;
use wbs2sdll_cli::run_cli;
use wbs2sdll_core::{
    argmax_cusum, compare_models, detect, run_mc, run_mc_parallel, segment_means, DgpKind,
    DgpSpec, Interval, ModelKind, PrefixSums, RngStream, SdllConfig, TimeSeries, Wbs2Config,
};

fn defaults() -> (Wbs2Config, SdllConfig) {
    (Wbs2Config::default(), SdllConfig::default())
}

fn rw_spec(n: usize, sigma: f64) -> DgpSpec {
    DgpSpec {
        kind: DgpKind::RandomWalk { y0: 0.0 },
        n,
        sigma,
        seed: 0,
    }
}

fn setar_spec(n: usize, sigma: f64) -> DgpSpec {
    DgpSpec {
        kind: DgpKind::Setar1 {
            a: 0.7,
            b: 0.7,
            tau: 1.0,
            y0: 0.0,
            burn_in: 0,
        },
        n,
        sigma,
        seed: 0,
    }
}

fn piecewise_spec(breaks: Vec<usize>, levels: Vec<f64>, n: usize, sigma: f64) -> DgpSpec {
    DgpSpec {
        kind: DgpKind::PiecewiseConstant { breaks, levels },
        n,
        sigma,
        seed: 0,
    }
}

fn gaussian_series(rng: &mut RngStream, n: usize, scale: f64) -> TimeSeries {
    TimeSeries::new((0..n).map(|_| scale * rng.next_gaussian()).collect()).unwrap()
}

#[test]
fn criterion_1_monte_carlo_reproduction() {
    let (wcfg, scfg) = defaults();
    let r = 200;
    let rw = run_mc_parallel(&rw_spec(500, 1.0), &wcfg, &scfg, r, 1).unwrap();
    assert!(
        (40.0..=95.0).contains(&rw.mean),
        "random-walk mean {} outside [40, 95]",
        rw.mean
    );
    assert!(
        (20.0..=70.0).contains(&rw.sd),
        "random-walk sd {} outside [20, 70]",
        rw.sd
    );
    let setar = run_mc_parallel(&setar_spec(500, 1.0), &wcfg, &scfg, r, 1).unwrap();
    assert!(
        (8.0..=35.0).contains(&setar.mean),
        "setar mean {} outside [8, 35]",
        setar.mean
    );
    println!(
        "acceptance: criterion 1 (monte carlo reproduction): PASS \
         (rw mean {:.1} sd {:.1} in [40,95]x[20,70]; setar mean {:.1} in [8,35])",
        rw.mean, rw.sd, setar.mean
    );
}

#[test]
fn criterion_2_ordering_claim() {
    let (wcfg, scfg) = defaults();
    let r = 200;
    let mut wins = 0;
    for master_seed in 1..=20u64 {
        let rw = run_mc_parallel(&rw_spec(500, 1.0), &wcfg, &scfg, r, master_seed).unwrap();
        let setar = run_mc_parallel(&setar_spec(500, 1.0), &wcfg, &scfg, r, master_seed).unwrap();
        if rw.mean > setar.mean {
            wins += 1;
        }
    }
    assert!(wins >= 19, "ordering held in only {wins}/20 batches");
    println!("acceptance: criterion 2 (rw mean > setar mean): PASS ({wins}/20 batches)");
}

#[test]
fn criterion_3_correct_specification_sanity() {
    let (wcfg, scfg) = defaults();
    // Five jumps of size 3 sigma with spacing >= 50.
    let spec = piecewise_spec(
        vec![80, 160, 240, 330, 420],
        vec![0.0, 3.0, 0.0, 3.0, 0.0, 3.0],
        500,
        1.0,
    );
    let summary = run_mc_parallel(&spec, &wcfg, &scfg, 200, 33).unwrap();
    let within = summary
        .counts
        .iter()
        .filter(|&&c| (3..=7).contains(&c))
        .count();
    assert!(
        within * 100 >= 90 * summary.counts.len(),
        "only {within}/200 replications within +-2 of 5"
    );
    println!(
        "acceptance: criterion 3 (five 3-sigma jumps recovered +-2): PASS ({within}/200, mean {:.2})",
        summary.mean
    );
}

#[test]
fn criterion_4_false_positive_guard() {
    let (wcfg, scfg) = defaults();
    let spec = piecewise_spec(vec![], vec![0.0], 500, 1.0);
    let summary = run_mc_parallel(&spec, &wcfg, &scfg, 200, 44).unwrap();
    let zeros = summary.counts.iter().filter(|&&c| c == 0).count();
    let mut sorted = summary.counts.clone();
    sorted.sort_unstable();
    let median = sorted[sorted.len() / 2];
    assert!(zeros * 100 >= 80 * 200, "q=0 in only {zeros}/200");
    assert_eq!(median, 0, "median q on pure noise is {median}");
    println!(
        "acceptance: criterion 4 (pure-noise false positives): PASS (q=0 in {zeros}/200, median 0)"
    );
}

#[test]
fn criterion_5_cusum_oracle_equivalence() {
    fn oracle_contrast(values: &[f64], start: usize, split: usize, end: usize) -> f64 {
        let left: f64 = values[start..split].iter().sum();
        let right: f64 = values[split..end].iter().sum();
        let l = (split - start) as f64;
        let r = (end - split) as f64;
        let m = (end - start) as f64;
        (r / (m * l)).sqrt() * left - (l / (m * r)).sqrt() * right
    }

    let mut rng = RngStream::new(555, 0);
    let mut checked = 0usize;
    for case in 0..100 {
        let n = 6 + case % 45; // series lengths 6..=50
        let values: Vec<f64> = (0..n).map(|_| 5.0 * rng.next_gaussian()).collect();
        let x = TimeSeries::new(values.clone()).unwrap();
        for start in 0..n - 1 {
            for end in start + 2..=n {
                let cand = argmax_cusum(&x, Interval::new(start, end).unwrap()).unwrap();
                let mut best_split = start + 1;
                let mut best_mag = oracle_contrast(&values, start, best_split, end).abs();
                for split in start + 2..end {
                    let mag = oracle_contrast(&values, start, split, end).abs();
                    if mag > best_mag {
                        best_mag = mag;
                        best_split = split;
                    }
                }
                assert_eq!(cand.split, best_split, "case {case} [{start}, {end})");
                assert!(
                    (cand.magnitude - best_mag).abs() <= 1e-10,
                    "case {case} [{start}, {end}): {} vs {best_mag}",
                    cand.magnitude
                );
                checked += 1;
            }
        }
    }
    println!(
        "acceptance: criterion 5 (cusum argmax vs brute force): PASS ({checked} subintervals)"
    );
}

#[test]
fn criterion_6_affine_invariance() {
    let (_, scfg) = defaults();
    let mut rng = RngStream::new(666, 0);
    let mut max_shift_dev = 0.0f64;
    for case in 0..50u64 {
        let n = 60;
        let x = gaussian_series(&mut rng, n, 2.0);
        let scale = (0.5 + 2.5 * rng.next_f64()) * if case % 2 == 0 { 1.0 } else { -1.0 };
        let shift = 100.0 * (rng.next_f64() - 0.5);
        let moved = TimeSeries::new(x.values().iter().map(|v| scale * v + shift).collect())
            .unwrap();

        let wcfg = Wbs2Config {
            seed: case,
            ..Wbs2Config::default()
        };
        let base = detect(&x, &wcfg, &scfg).unwrap();
        let transformed = detect(&moved, &wcfg, &scfg).unwrap();
        assert_eq!(base.q_hat, transformed.q_hat, "case {case}");
        assert_eq!(
            base.segmentation.changepoints(),
            transformed.segmentation.changepoints(),
            "case {case}"
        );

        // Pure shift leaves every CUSUM value unchanged to 1e-10.
        let shifted = TimeSeries::new(x.values().iter().map(|v| v + shift).collect()).unwrap();
        let p0 = PrefixSums::new(&x);
        let p1 = PrefixSums::new(&shifted);
        for start in 0..n - 1 {
            for end in start + 2..=n {
                for split in start + 1..end {
                    let dev = (p0.contrast(start, split, end) - p1.contrast(start, split, end))
                        .abs();
                    max_shift_dev = max_shift_dev.max(dev);
                }
            }
        }
    }
    assert!(max_shift_dev <= 1e-10, "max shift deviation {max_shift_dev}");
    println!(
        "acceptance: criterion 6 (affine invariance): PASS \
         (50 cases; max shift deviation {max_shift_dev:.2e})"
    );
}

#[test]
fn criterion_7_noiseless_exactness() {
    let (wcfg, scfg) = defaults();

    let mut values = vec![0.0; 50];
    values.extend(vec![1.0; 50]);
    let single = detect(&TimeSeries::new(values).unwrap(), &wcfg, &scfg).unwrap();
    assert_eq!(single.segmentation.changepoints(), &[50]);

    let breaks = vec![40usize, 90, 140, 190, 220];
    let levels = vec![0.0, 4.0, -3.0, 2.0, 6.0, 1.0];
    let mut rng = RngStream::new(0, 0);
    let x = wbs2sdll_core::simulate_piecewise(&breaks, &levels, 0.0, 250, &mut rng).unwrap();
    let multi = detect(&x, &wcfg, &scfg).unwrap();
    assert_eq!(multi.segmentation.changepoints(), breaks.as_slice());
    let seg = segment_means(&x, &breaks).unwrap();
    assert_eq!(seg.means(), levels.as_slice());

    let flat = detect(&TimeSeries::new(vec![3.0; 120]).unwrap(), &wcfg, &scfg).unwrap();
    assert_eq!(flat.q_hat, 0);

    println!(
        "acceptance: criterion 7 (noiseless exactness): PASS \
         (single step at 50; five steps at {breaks:?}; constant -> 0)"
    );
}

#[test]
fn criterion_8_diagnostics_discrimination() {
    let (wcfg, scfg) = defaults();
    let reps = 100u64;

    let mut rw_ok = 0;
    for seed in 0..reps {
        let spec = DgpSpec {
            seed,
            ..rw_spec(500, 1.0)
        };
        let x = spec.simulate(0).unwrap();
        let det = detect(&x, &wcfg, &scfg).unwrap();
        let ranking = compare_models(&x, &det).unwrap();
        let pc = ranking.position(ModelKind::PiecewiseConstant).unwrap();
        let rw = ranking.position(ModelKind::RandomWalk).unwrap();
        let ar = ranking.position(ModelKind::Ar1).unwrap();
        if rw.min(ar) < pc {
            rw_ok += 1;
        }
    }
    assert!(rw_ok >= 80, "random-walk side: {rw_ok}/100");

    let mut setar_ok = 0;
    for seed in 0..reps {
        let spec = DgpSpec {
            seed,
            ..setar_spec(500, 1.0)
        };
        let x = spec.simulate(0).unwrap();
        let det = detect(&x, &wcfg, &scfg).unwrap();
        let ranking = compare_models(&x, &det).unwrap();
        if ranking.fits[0].kind == ModelKind::Setar1 {
            setar_ok += 1;
        }
    }
    assert!(setar_ok >= 60, "setar side: {setar_ok}/100");

    println!(
        "acceptance: criterion 8 (diagnostics discrimination): PASS \
         (rw/ar1 above piecewise {rw_ok}/100; setar first {setar_ok}/100)"
    );
}

#[test]
fn criterion_9_determinism() {
    let (wcfg, scfg) = defaults();

    // Library level: identical summaries from repeated seeded runs,
    // sequential and parallel alike.
    let spec = rw_spec(300, 1.0);
    let a = run_mc(&spec, &wcfg, &scfg, 10, 99).unwrap();
    let b = run_mc(&spec, &wcfg, &scfg, 10, 99).unwrap();
    let c = run_mc_parallel(&spec, &wcfg, &scfg, 10, 99).unwrap();
    assert_eq!(a.counts, b.counts);
    assert_eq!(a.counts, c.counts);
    assert_eq!(a.mean, c.mean);
    assert_eq!(a.sd, c.sd);

    // CLI level: byte-identical artifacts for every seeded subcommand.
    let dir = TempDir::new().unwrap();
    let run = |args: &[&str]| {
        assert_eq!(
            run_cli(std::iter::once("wbs2sdll").chain(args.iter().copied())),
            0
        );
    };
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();

    let (csv1, csv2) = (p("s1.csv"), p("s2.csv"));
    for out in [&csv1, &csv2] {
        run(&[
            "simulate", "--kind", "setar", "--n", "300", "--seed", "21", "--out", out,
        ]);
    }
    assert_eq!(fs::read(&csv1).unwrap(), fs::read(&csv2).unwrap());

    let (j1, j2) = (p("d1.json"), p("d2.json"));
    for out in [&j1, &j2] {
        run(&["detect", "--input", &csv1, "--seed", "4", "--out", out]);
    }
    assert_eq!(fs::read(&j1).unwrap(), fs::read(&j2).unwrap());

    let (m1, m2) = (p("m1.json"), p("m2.json"));
    for out in [&m1, &m2] {
        run(&[
            "mc", "--kind", "rw", "--n", "150", "--r", "8", "--seed", "7", "--out", out,
        ]);
    }
    assert_eq!(fs::read(&m1).unwrap(), fs::read(&m2).unwrap());

    println!("acceptance: criterion 9 (seeded byte-reproducibility): PASS");
}
