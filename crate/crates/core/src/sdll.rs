// SPDX-License-Identifier: MIT OR Apache-2.0

//! Steepest-drop-to-low-levels model selection, and the full detection
//! pipeline.
//!
//! Candidates arrive sorted by decreasing |CUSUM| magnitude. After
//! normalizing by the robust noise scale, the rule looks for the steepest
//! drop in consecutive log-magnitudes — the point where the ranking falls
//! off a cliff from signal to noise — subject to two guards: the drop must
//! land strictly below the universal threshold `c * sqrt(2 ln n)` ("to low
//! levels"), and it must start from a magnitude still above a small
//! fraction of that threshold. The second guard keeps the search away from
//! the far tail of near-zero magnitudes, whose log-gaps are large but
//! meaningless. Nothing is selected when even the top magnitude sits below
//! the threshold.

use alloc::format;
use alloc::vec::Vec;

use crate::cusum::Candidate;
use crate::error::{Error, Result};
use crate::math;
use crate::series::{mad_sigma, segment_means, Segmentation, TimeSeries};
use crate::wbs2::{wbs2_candidates, Wbs2Config};

/// Tuning constants for [`sdll_select`].
#[derive(Clone, Debug, PartialEq)]
pub struct SdllConfig {
    /// Multiplier `c` on the universal threshold `sqrt(2 ln n)`.
    pub threshold_scale: f64,
    /// Fraction of the threshold below which ranked magnitudes are excluded
    /// from the drop search (they can neither be selected nor contribute a
    /// drop).
    pub min_threshold_scale: f64,
    /// Floor applied to normalized magnitudes before taking logs, so exact
    /// zeros from noiseless data stay finite.
    pub magnitude_floor: f64,
}

impl Default for SdllConfig {
    /// Constants were calibrated once against the Monte Carlo reproduction
    /// bands (see the acceptance suite) and are frozen here.
    fn default() -> Self {
        SdllConfig {
            threshold_scale: 1.75,
            min_threshold_scale: 0.05,
            magnitude_floor: 1e-12,
        }
    }
}

impl SdllConfig {
    fn validate(&self) -> Result<()> {
        if !self.threshold_scale.is_finite() || self.threshold_scale <= 0.0 {
            return Err(Error::invalid_argument("threshold_scale must be positive"));
        }
        if !self.min_threshold_scale.is_finite()
            || self.min_threshold_scale <= 0.0
            || self.min_threshold_scale > 1.0
        {
            return Err(Error::invalid_argument(
                "min_threshold_scale must lie in (0, 1]",
            ));
        }
        if !self.magnitude_floor.is_finite() || self.magnitude_floor <= 0.0 {
            return Err(Error::invalid_argument("magnitude_floor must be positive"));
        }
        Ok(())
    }
}

/// Number of leading candidates to keep from `magnitudes` (which must be
/// sorted non-increasing), given the noise scale and series length.
///
/// With `r_i = max(magnitudes_i / sigma_hat, floor)` and
/// `tau = c * sqrt(2 ln n)`:
///
/// * `r_1 < tau` selects nothing;
/// * otherwise the selected count is the `q` maximizing
///   `ln r_q - ln r_{q+1}` over all `q` with `r_q >= min_scale * tau` and
///   `r_{q+1} < tau` (ties go to the smallest `q`);
/// * if no drop lands below `tau`, every candidate is kept.
pub fn sdll_select(
    magnitudes: &[f64],
    sigma_hat: f64,
    n: usize,
    cfg: &SdllConfig,
) -> Result<usize> {
    cfg.validate()?;
    if n < 2 {
        return Err(Error::invalid_argument("sdll needs a series length of at least 2"));
    }
    if !sigma_hat.is_finite() || sigma_hat <= 0.0 {
        return Err(Error::invalid_argument(format!(
            "sigma_hat must be positive and finite, got {sigma_hat}"
        )));
    }
    for (i, pair) in magnitudes.windows(2).enumerate() {
        if pair[1] > pair[0] {
            return Err(Error::invalid_argument(format!(
                "magnitudes must be sorted non-increasing, violated at index {i}"
            )));
        }
    }
    if let Some(bad) = magnitudes.iter().find(|m| !m.is_finite() || **m < 0.0) {
        return Err(Error::invalid_argument(format!(
            "magnitudes must be finite and non-negative, got {bad}"
        )));
    }
    if magnitudes.is_empty() {
        return Ok(0);
    }

    let tau = cfg.threshold_scale * math::sqrt(2.0 * math::ln(n as f64));
    let tau_min = cfg.min_threshold_scale * tau;
    let ratios: Vec<f64> = magnitudes
        .iter()
        .map(|m| (m / sigma_hat).max(cfg.magnitude_floor))
        .collect();
    if ratios[0] < tau {
        return Ok(0);
    }

    let count = ratios.len();
    let mut best: Option<(usize, f64)> = None;
    for q in 1..count {
        if ratios[q - 1] >= tau_min && ratios[q] < tau {
            let drop = math::ln(ratios[q - 1]) - math::ln(ratios[q]);
            let take = match best {
                None => true,
                Some((_, best_drop)) => drop > best_drop,
            };
            if take {
                best = Some((q, drop));
            }
        }
    }
    Ok(best.map_or(count, |(q, _)| q))
}

/// Everything [`detect`] learned about a series.
#[derive(Clone, Debug)]
pub struct DetectResult {
    /// Selected change-points with their least-squares segment means.
    pub segmentation: Segmentation,
    /// Complete candidate path, sorted by decreasing magnitude.
    pub candidates: Vec<Candidate>,
    /// Robust noise-scale estimate used for normalization.
    pub sigma_hat: f64,
    /// True when the noise scale was floored (zero median difference).
    pub sigma_degenerate: bool,
    /// Number of candidates selected as change-points.
    pub q_hat: usize,
}

/// Full pipeline: robust noise scale, WBS2 candidate path, steepest-drop
/// count selection, least-squares segment fit.
pub fn detect(x: &TimeSeries, wcfg: &Wbs2Config, scfg: &SdllConfig) -> Result<DetectResult> {
    let noise = mad_sigma(x)?;
    let candidates = wbs2_candidates(x, wcfg)?;
    let magnitudes: Vec<f64> = candidates.iter().map(|c| c.magnitude).collect();
    let q_hat = sdll_select(&magnitudes, noise.sigma, x.len(), scfg)?;
    let mut changepoints: Vec<usize> = candidates[..q_hat].iter().map(|c| c.split).collect();
    changepoints.sort_unstable();
    let segmentation = segment_means(x, &changepoints)?;
    Ok(DetectResult {
        segmentation,
        candidates,
        sigma_hat: noise.sigma,
        sigma_degenerate: noise.degenerate,
        q_hat,
    })
}
