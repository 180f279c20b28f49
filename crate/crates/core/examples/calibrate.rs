// SPDX-License-Identifier: MIT OR Apache-2.0

//! Check the frozen detector constants against the Monte Carlo reproduction
//! bands across several master seeds. This is the tool the default
//! `SdllConfig` was calibrated with.
//!
//! Run with: `cargo run -p wbs2sdll-core --features rayon --example calibrate`

use wbs2sdll_core::*;

fn rw_spec() -> DgpSpec {
    DgpSpec {
        kind: DgpKind::RandomWalk { y0: 0.0 },
        n: 500,
        sigma: 1.0,
        seed: 0,
    }
}

fn setar_spec() -> DgpSpec {
    DgpSpec {
        kind: DgpKind::Setar1 {
            a: 0.7,
            b: 0.7,
            tau: 1.0,
            y0: 0.0,
            burn_in: 0,
        },
        n: 500,
        sigma: 1.0,
        seed: 0,
    }
}

fn noise_spec() -> DgpSpec {
    DgpSpec {
        kind: DgpKind::PiecewiseConstant {
            breaks: vec![],
            levels: vec![0.0],
        },
        n: 500,
        sigma: 1.0,
        seed: 0,
    }
}

fn five_jump_spec() -> DgpSpec {
    DgpSpec {
        kind: DgpKind::PiecewiseConstant {
            breaks: vec![80, 160, 240, 330, 420],
            levels: vec![0.0, 3.0, 0.0, 3.0, 0.0, 3.0],
        },
        n: 500,
        sigma: 1.0,
        seed: 0,
    }
}

fn main() {
    let r = 200;
    let wcfg = Wbs2Config::default();
    let scfg = SdllConfig::default();
    println!(
        "defaults: M={} c_thr={} min_scale={}",
        wcfg.intervals_per_segment, scfg.threshold_scale, scfg.min_threshold_scale
    );
    println!("bands: rw mean [40, 95], rw sd [20, 70], setar mean [8, 35]");
    let mut order_ok = 0;
    for seed in 1..=10u64 {
        let rw = run_mc_parallel(&rw_spec(), &wcfg, &scfg, r, seed).unwrap();
        let setar = run_mc_parallel(&setar_spec(), &wcfg, &scfg, r, seed).unwrap();
        if rw.mean > setar.mean {
            order_ok += 1;
        }
        println!(
            "seed {seed:2}: rw {:6.1} sd {:5.1} | setar {:5.1} sd {:5.1}",
            rw.mean, rw.sd, setar.mean, setar.sd
        );
    }
    println!("ordering rw > setar: {order_ok}/10");

    let noise = run_mc_parallel(&noise_spec(), &wcfg, &scfg, r, 9).unwrap();
    let mut sorted = noise.counts.clone();
    sorted.sort_unstable();
    let fp0 = noise.counts.iter().filter(|&&c| c == 0).count();
    let pc = run_mc_parallel(&five_jump_spec(), &wcfg, &scfg, r, 10).unwrap();
    let pc_ok = pc.counts.iter().filter(|&&c| (3..=7).contains(&c)).count();
    println!(
        "noise: q=0 in {fp0}/{r}, median {} | five jumps within +-2: {pc_ok}/{r}",
        sorted[r / 2]
    );
}
