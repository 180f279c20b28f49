// SPDX-License-Identifier: MIT OR Apache-2.0

//! Seeded data generating processes.
//!
//! Two of these are deliberately misspecified for a change-in-mean model: a
//! driftless random walk (stochastic trend) and a SETAR(1) threshold
//! autoregression (cycles). The third is a correctly specified
//! piecewise-constant control. All generators are pure functions of an
//! [`RngStream`], so identical specs reproduce identical paths.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::series::{validate_changepoints, TimeSeries};

/// Active-regime intercept of the reference SETAR(1) process.
pub const DEFAULT_SETAR_A: f64 = 0.7;
/// Active-regime slope of the reference SETAR(1) process.
pub const DEFAULT_SETAR_B: f64 = 0.7;
/// Threshold of the reference SETAR(1) process.
pub const DEFAULT_SETAR_TAU: f64 = 1.0;

/// Which process to simulate, with its kind-specific parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum DgpKind {
    /// `y_t = y_{t-1} + eps_t`, started at `y0`.
    RandomWalk { y0: f64 },
    /// `y_t = (a + b * y_{t-1}) * 1(y_{t-1} > tau) + eps_t`, started at
    /// `y0`, with `burn_in` warm-up steps discarded before recording.
    Setar1 {
        a: f64,
        b: f64,
        tau: f64,
        y0: f64,
        burn_in: usize,
    },
    /// `y_t = levels[j] + eps_t` on the segment `j` induced by `breaks`.
    PiecewiseConstant { breaks: Vec<usize>, levels: Vec<f64> },
}

/// A complete, seeded description of a simulated experiment input.
#[derive(Clone, Debug, PartialEq)]
pub struct DgpSpec {
    pub kind: DgpKind,
    pub n: usize,
    pub sigma: f64,
    pub seed: u64,
}

impl DgpSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid_argument("series length must be at least 1"));
        }
        if !self.sigma.is_finite() || self.sigma < 0.0 {
            return Err(Error::invalid_argument(format!(
                "noise sd must be finite and non-negative, got {}",
                self.sigma
            )));
        }
        match &self.kind {
            DgpKind::RandomWalk { y0 } => check_finite("y0", *y0),
            DgpKind::Setar1 { a, b, tau, y0, .. } => {
                check_finite("a", *a)?;
                check_finite("b", *b)?;
                check_finite("tau", *tau)?;
                check_finite("y0", *y0)
            }
            DgpKind::PiecewiseConstant { breaks, levels } => {
                validate_changepoints(breaks, self.n)?;
                if levels.len() != breaks.len() + 1 {
                    return Err(Error::invalid_argument(format!(
                        "expected {} levels for {} breaks, got {}",
                        breaks.len() + 1,
                        breaks.len(),
                        levels.len()
                    )));
                }
                for (j, level) in levels.iter().enumerate() {
                    if !level.is_finite() {
                        return Err(Error::invalid_argument(format!(
                            "non-finite level at position {j}"
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    /// Simulate with this spec's own seed on the given stream id.
    pub fn simulate(&self, stream: u64) -> Result<TimeSeries> {
        let mut rng = RngStream::new(self.seed, stream);
        self.simulate_with(&mut rng)
    }

    /// Simulate drawing noise from a caller-provided stream (the Monte
    /// Carlo harness keys streams off its own master seed instead of
    /// `self.seed`).
    pub fn simulate_with(&self, rng: &mut RngStream) -> Result<TimeSeries> {
        self.validate()?;
        match &self.kind {
            DgpKind::RandomWalk { y0 } => simulate_random_walk(self.n, self.sigma, *y0, rng),
            DgpKind::Setar1 {
                a,
                b,
                tau,
                y0,
                burn_in,
            } => simulate_setar1(self.n, *a, *b, *tau, self.sigma, *y0, *burn_in, rng),
            DgpKind::PiecewiseConstant { breaks, levels } => {
                simulate_piecewise(breaks, levels, self.sigma, self.n, rng)
            }
        }
    }
}

fn check_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid_argument(format!(
            "{name} must be finite, got {value}"
        )))
    }
}

fn check_n_sigma(n: usize, sigma: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid_argument("series length must be at least 1"));
    }
    if !sigma.is_finite() || sigma < 0.0 {
        return Err(Error::invalid_argument(format!(
            "noise sd must be finite and non-negative, got {sigma}"
        )));
    }
    Ok(())
}

/// Driftless Gaussian random walk: `y_t = y_{t-1} + sigma * z_t`, with
/// `y_0 = y0` as the (unrecorded) initial condition.
pub fn simulate_random_walk(
    n: usize,
    sigma: f64,
    y0: f64,
    rng: &mut RngStream,
) -> Result<TimeSeries> {
    check_n_sigma(n, sigma)?;
    check_finite("y0", y0)?;
    let mut values = Vec::with_capacity(n);
    let mut level = y0;
    for _ in 0..n {
        level += sigma * rng.next_gaussian();
        values.push(level);
    }
    TimeSeries::new(values)
}

/// SETAR(1): `y_t = (a + b * y_{t-1}) * 1(y_{t-1} > tau) + sigma * z_t`.
///
/// The indicator is strict, so a lagged value exactly at the threshold
/// leaves the autoregressive part switched off. `burn_in` extra steps are
/// simulated and discarded before the `n` recorded observations.
#[allow(clippy::too_many_arguments)]
pub fn simulate_setar1(
    n: usize,
    a: f64,
    b: f64,
    tau: f64,
    sigma: f64,
    y0: f64,
    burn_in: usize,
    rng: &mut RngStream,
) -> Result<TimeSeries> {
    check_n_sigma(n, sigma)?;
    check_finite("a", a)?;
    check_finite("b", b)?;
    check_finite("tau", tau)?;
    check_finite("y0", y0)?;
    let mut values = Vec::with_capacity(n);
    let mut prev = y0;
    for t in 0..burn_in + n {
        let regime = if prev > tau { a + b * prev } else { 0.0 };
        let y = regime + sigma * rng.next_gaussian();
        if t >= burn_in {
            values.push(y);
        }
        prev = y;
    }
    TimeSeries::new(values)
}

/// Piecewise-constant mean plus Gaussian noise; `breaks` follow the crate's
/// change-point convention (new segment starts at that index).
pub fn simulate_piecewise(
    breaks: &[usize],
    levels: &[f64],
    sigma: f64,
    n: usize,
    rng: &mut RngStream,
) -> Result<TimeSeries> {
    check_n_sigma(n, sigma)?;
    validate_changepoints(breaks, n)?;
    if levels.len() != breaks.len() + 1 {
        return Err(Error::invalid_argument(format!(
            "expected {} levels for {} breaks, got {}",
            breaks.len() + 1,
            breaks.len(),
            levels.len()
        )));
    }
    let mut values = Vec::with_capacity(n);
    let mut segment = 0usize;
    for t in 0..n {
        if segment < breaks.len() && t >= breaks[segment] {
            segment += 1;
        }
        let level = levels[segment];
        if !level.is_finite() {
            return Err(Error::invalid_argument(format!(
                "non-finite level at position {segment}"
            )));
        }
        values.push(level + sigma * rng.next_gaussian());
    }
    TimeSeries::new(values)
}
