// SPDX-License-Identifier: MIT OR Apache-2.0

//! Seeded Monte Carlo replication harness.
//!
//! Each replication simulates a fresh path and runs the full detector on
//! it. Replication `r` draws generator noise from stream `2r` and derives
//! the WBS2 interval seed from stream `2r + 1`, both keyed by the master
//! seed, so replications are mutually independent and the whole experiment
//! is reproducible from `(spec, configs, R, master_seed)` alone. The spec's
//! own `seed` field is deliberately ignored here. Because replications
//! share no state, they can run on a worker pool; results are gathered by
//! replication index, so output order is seed-determined, not
//! schedule-determined.

use alloc::vec::Vec;

use crate::dgp::DgpSpec;
use crate::error::{Error, Result};
use crate::math;
use crate::rng::RngStream;
use crate::sdll::{detect, SdllConfig};
use crate::wbs2::Wbs2Config;

/// Detected change-point counts per replication with their mean and
/// cross-replication dispersion.
#[derive(Clone, Debug)]
pub struct McSummary {
    /// `q_hat` per replication, ordered by replication index.
    pub counts: Vec<usize>,
    pub mean: f64,
    /// Sample standard deviation of the counts (divisor `R - 1`).
    pub sd: f64,
    pub replications: usize,
    pub spec: DgpSpec,
    pub wbs2: Wbs2Config,
    pub sdll: SdllConfig,
}

/// Mean and sample standard deviation (divisor `R - 1`; zero when `R = 1`).
pub fn summarize(counts: &[usize]) -> Result<(f64, f64)> {
    if counts.is_empty() {
        return Err(Error::invalid_argument("summarize needs at least one count"));
    }
    let r = counts.len() as f64;
    let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / r;
    let sd = if counts.len() == 1 {
        0.0
    } else {
        let ss: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - mean;
                d * d
            })
            .sum();
        math::sqrt(ss / (r - 1.0))
    };
    Ok((mean, sd))
}

fn replicate(
    spec: &DgpSpec,
    wcfg: &Wbs2Config,
    scfg: &SdllConfig,
    master_seed: u64,
    rep: usize,
) -> Result<usize> {
    let mut sim_rng = RngStream::new(master_seed, 2 * rep as u64);
    let x = spec.simulate_with(&mut sim_rng)?;
    let wcfg_rep = Wbs2Config {
        seed: RngStream::new(master_seed, 2 * rep as u64 + 1).next_u64(),
        ..wcfg.clone()
    };
    Ok(detect(&x, &wcfg_rep, scfg)?.q_hat)
}

fn build_summary(
    spec: &DgpSpec,
    wcfg: &Wbs2Config,
    scfg: &SdllConfig,
    counts: Vec<usize>,
) -> Result<McSummary> {
    let (mean, sd) = summarize(&counts)?;
    Ok(McSummary {
        replications: counts.len(),
        counts,
        mean,
        sd,
        spec: spec.clone(),
        wbs2: wcfg.clone(),
        sdll: scfg.clone(),
    })
}

/// Run `replications` simulate-then-detect replications sequentially.
pub fn run_mc(
    spec: &DgpSpec,
    wcfg: &Wbs2Config,
    scfg: &SdllConfig,
    replications: usize,
    master_seed: u64,
) -> Result<McSummary> {
    if replications == 0 {
        return Err(Error::invalid_argument("at least one replication is required"));
    }
    spec.validate()?;
    let counts = (1..=replications)
        .map(|rep| replicate(spec, wcfg, scfg, master_seed, rep))
        .collect::<Result<Vec<_>>>()?;
    build_summary(spec, wcfg, scfg, counts)
}

/// [`run_mc`] fanned out over a rayon worker pool. Produces the identical
/// summary: replications are independent and gathered by index.
#[cfg(feature = "rayon")]
pub fn run_mc_parallel(
    spec: &DgpSpec,
    wcfg: &Wbs2Config,
    scfg: &SdllConfig,
    replications: usize,
    master_seed: u64,
) -> Result<McSummary> {
    use rayon::prelude::*;

    if replications == 0 {
        return Err(Error::invalid_argument("at least one replication is required"));
    }
    spec.validate()?;
    let counts = (1..=replications)
        .into_par_iter()
        .map(|rep| replicate(spec, wcfg, scfg, master_seed, rep))
        .collect::<Result<Vec<_>>>()?;
    build_summary(spec, wcfg, scfg, counts)
}
