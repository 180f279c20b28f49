// SPDX-License-Identifier: MIT OR Apache-2.0

//! Model comparisons that separate genuine frequent change-points from
//! systematic dynamics.
//!
//! A detector tuned for piecewise-constant means will happily carve a
//! stochastic trend or a threshold cycle into many spurious segments. To
//! tell those apart, this module fits four competing explanations on the
//! common sample `t = 2..n` and ranks them by BIC:
//!
//! * the detector's own piecewise-constant fit, charged `2 q + 2`
//!   parameters (means, change-point locations, variance) — charging the
//!   locations is what stops frequent-change fits from winning for free;
//! * a global AR(1), whose slope near one flags a unit root;
//! * a two-regime SETAR(1) with the threshold chosen on a quantile grid;
//! * a driftless random walk (zero-parameter mean model on differences).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::sdll::DetectResult;
use crate::series::{fitted_signal, TimeSeries};

/// Minimum observations per SETAR regime for a grid threshold to be
/// admissible.
pub const SETAR_MIN_REGIME_POINTS: usize = 5;

/// The competing model families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    PiecewiseConstant,
    Ar1,
    Setar1,
    RandomWalk,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::PiecewiseConstant => "piecewise_constant",
            ModelKind::Ar1 => "ar1",
            ModelKind::Setar1 => "setar1",
            ModelKind::RandomWalk => "random_walk",
        }
    }

    fn rank_order(&self) -> u8 {
        match self {
            ModelKind::PiecewiseConstant => 0,
            ModelKind::Ar1 => 1,
            ModelKind::Setar1 => 2,
            ModelKind::RandomWalk => 3,
        }
    }
}

/// One fitted model: parameters, residual sum of squares, effective
/// parameter count and BIC.
#[derive(Clone, Debug)]
pub struct ModelFit {
    pub kind: ModelKind,
    /// Model-specific coefficients: `[intercept, slope]` for AR(1),
    /// `[a1, b1, a2, b2, tau]` for SETAR(1) (regime 1 is `lag <= tau`),
    /// segment means for the piecewise fit, `[innovation_variance]` for the
    /// random walk.
    pub params: Vec<f64>,
    pub ssr: f64,
    /// Effective parameter count `p` charged by the BIC.
    pub param_count: usize,
    pub bic: f64,
}

/// A model excluded from the ranking, with the reason.
#[derive(Clone, Debug)]
pub struct SkippedFit {
    pub kind: ModelKind,
    pub reason: String,
}

/// Ranked fits (BIC ascending) plus any models that could not be fitted.
#[derive(Clone, Debug)]
pub struct ModelRanking {
    pub fits: Vec<ModelFit>,
    pub skipped: Vec<SkippedFit>,
}

impl ModelRanking {
    /// Position of `kind` in the ranking, if it was fitted.
    pub fn position(&self, kind: ModelKind) -> Option<usize> {
        self.fits.iter().position(|f| f.kind == kind)
    }
}

/// `n_eff * ln(ssr / n_eff) + p * ln(n_eff)`.
pub fn bic(ssr: f64, param_count: usize, n_eff: usize) -> f64 {
    let n = n_eff as f64;
    n * math::ln(ssr / n) + param_count as f64 * math::ln(n)
}

/// Lag/response pairs `(x_{t-1}, x_t)` for `t = 2..n` (1-based).
fn lag_pairs(x: &TimeSeries) -> Vec<(f64, f64)> {
    x.values().windows(2).map(|w| (w[0], w[1])).collect()
}

struct OlsLine {
    intercept: f64,
    slope: f64,
    ssr: f64,
}

/// Least squares of `y` on `(1, x)` over the given pairs; `None` when the
/// regressor carries (numerically) no variance.
fn ols_line(pairs: &[(f64, f64)]) -> Option<OlsLine> {
    let m = pairs.len() as f64;
    let mean_x = pairs.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = pairs.iter().map(|p| p.1).sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y) in pairs {
        let dx = x - mean_x;
        sxx += dx * dx;
        sxy += dx * (y - mean_y);
    }
    let noise = f64::EPSILON * (1.0 + math::abs(mean_x));
    if sxx <= 16.0 * m * noise * noise {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ssr = pairs
        .iter()
        .map(|&(x, y)| {
            let r = y - intercept - slope * x;
            r * r
        })
        .sum();
    Some(OlsLine {
        intercept,
        slope,
        ssr,
    })
}

/// Fit a global AR(1) by least squares of `x_t` on `(1, x_{t-1})`.
///
/// `p = 3` (two coefficients plus the innovation variance).
pub fn fit_ar1(x: &TimeSeries) -> Result<ModelFit> {
    if x.len() < 3 {
        return Err(Error::invalid_argument("ar1 needs at least 3 observations"));
    }
    let pairs = lag_pairs(x);
    let line = ols_line(&pairs)
        .ok_or_else(|| Error::degenerate_fit("ar1: lagged regressor has zero variance"))?;
    let n_eff = pairs.len();
    Ok(ModelFit {
        kind: ModelKind::Ar1,
        params: vec![line.intercept, line.slope],
        ssr: line.ssr,
        param_count: 3,
        bic: bic(line.ssr, 3, n_eff),
    })
}

/// The default SETAR threshold grid: quantiles 0.10, 0.15, ..., 0.90 of the
/// lagged values.
pub fn default_threshold_grid() -> Vec<f64> {
    (2..=18).map(|k| k as f64 * 0.05).collect()
}

/// Empirical quantile with linear interpolation on a sorted slice.
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let last = sorted.len() - 1;
    let h = last as f64 * q;
    let lo = math::floor(h) as usize;
    if lo >= last {
        return sorted[last];
    }
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

/// Fit a two-regime SETAR(1),
/// `x_t = (a1 + b1 x_{t-1}) 1(x_{t-1} <= tau) + (a2 + b2 x_{t-1}) 1(x_{t-1} > tau) + eps_t`,
/// with `tau` picked from the quantile grid by minimum SSR.
///
/// Grid thresholds leaving fewer than [`SETAR_MIN_REGIME_POINTS`] pairs in
/// either regime, or a regime with a constant regressor, are skipped.
/// `p = 6` (four coefficients, the threshold and the variance).
pub fn fit_setar1(x: &TimeSeries, grid_quantiles: &[f64]) -> Result<ModelFit> {
    if x.len() < 20 {
        return Err(Error::invalid_argument(
            "setar1 needs at least 20 observations",
        ));
    }
    if grid_quantiles.is_empty() {
        return Err(Error::invalid_argument("threshold grid must be non-empty"));
    }
    for &q in grid_quantiles {
        if !q.is_finite() || !(0.0..=1.0).contains(&q) {
            return Err(Error::invalid_argument(format!(
                "grid quantiles must lie in [0, 1], got {q}"
            )));
        }
    }

    let pairs = lag_pairs(x);
    let mut lags: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    lags.sort_unstable_by(f64::total_cmp);

    let mut best: Option<(f64, OlsLine, OlsLine, f64)> = None; // (ssr, low, high, tau)
    let mut previous_tau = f64::NAN;
    for &q in grid_quantiles {
        let tau = quantile_sorted(&lags, q);
        if tau == previous_tau {
            continue;
        }
        previous_tau = tau;

        let mut low = Vec::new();
        let mut high = Vec::new();
        for &pair in &pairs {
            if pair.0 <= tau {
                low.push(pair);
            } else {
                high.push(pair);
            }
        }
        if low.len() < SETAR_MIN_REGIME_POINTS || high.len() < SETAR_MIN_REGIME_POINTS {
            continue;
        }
        let (Some(low_line), Some(high_line)) = (ols_line(&low), ols_line(&high)) else {
            continue;
        };
        let ssr = low_line.ssr + high_line.ssr;
        if best.as_ref().is_none_or(|(best_ssr, ..)| ssr < *best_ssr) {
            best = Some((ssr, low_line, high_line, tau));
        }
    }

    let (ssr, low, high, tau) = best.ok_or_else(|| {
        Error::degenerate_fit("setar1: no admissible threshold on the quantile grid")
    })?;
    let n_eff = pairs.len();
    Ok(ModelFit {
        kind: ModelKind::Setar1,
        params: vec![low.intercept, low.slope, high.intercept, high.slope, tau],
        ssr,
        param_count: 6,
        bic: bic(ssr, 6, n_eff),
    })
}

/// Score the driftless random walk: residuals are the first differences,
/// `p = 1` (innovation variance only).
pub fn fit_random_walk(x: &TimeSeries) -> Result<ModelFit> {
    if x.len() < 2 {
        return Err(Error::invalid_argument(
            "random walk scoring needs at least 2 observations",
        ));
    }
    let values = x.values();
    let ssr: f64 = values
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            d * d
        })
        .sum();
    let n_eff = x.len() - 1;
    Ok(ModelFit {
        kind: ModelKind::RandomWalk,
        params: vec![ssr / n_eff as f64],
        ssr,
        param_count: 1,
        bic: bic(ssr, 1, n_eff),
    })
}

/// Score the detector's piecewise-constant fit on the common sample.
fn score_piecewise(x: &TimeSeries, det: &DetectResult) -> ModelFit {
    let fit = fitted_signal(&det.segmentation);
    let ssr: f64 = x
        .values()
        .iter()
        .zip(fit.values())
        .skip(1)
        .map(|(a, b)| {
            let r = a - b;
            r * r
        })
        .sum();
    let param_count = 2 * det.q_hat + 2;
    let n_eff = x.len() - 1;
    ModelFit {
        kind: ModelKind::PiecewiseConstant,
        params: det.segmentation.means().to_vec(),
        ssr,
        param_count,
        bic: bic(ssr, param_count, n_eff),
    }
}

/// Fit every competing model on the common sample `t = 2..n` and rank by
/// BIC (ascending). Models whose fit is degenerate are excluded from the
/// ranking and reported in `skipped`.
pub fn compare_models(x: &TimeSeries, det: &DetectResult) -> Result<ModelRanking> {
    if det.segmentation.series_len() != x.len() {
        return Err(Error::invalid_argument(
            "detection result does not refer to this series",
        ));
    }
    if x.len() < 3 {
        return Err(Error::invalid_argument(
            "model comparison needs at least 3 observations",
        ));
    }

    let mut fits = vec![score_piecewise(x, det), fit_random_walk(x)?];
    let mut skipped = Vec::new();

    match fit_ar1(x) {
        Ok(fit) => fits.push(fit),
        Err(Error::DegenerateFit(reason)) => skipped.push(SkippedFit {
            kind: ModelKind::Ar1,
            reason,
        }),
        Err(e) => return Err(e),
    }

    if x.len() < 20 {
        skipped.push(SkippedFit {
            kind: ModelKind::Setar1,
            reason: String::from("series shorter than 20 observations"),
        });
    } else {
        match fit_setar1(x, &default_threshold_grid()) {
            Ok(fit) => fits.push(fit),
            Err(Error::DegenerateFit(reason)) => skipped.push(SkippedFit {
                kind: ModelKind::Setar1,
                reason,
            }),
            Err(e) => return Err(e),
        }
    }

    fits.sort_by(|a, b| {
        a.bic
            .total_cmp(&b.bic)
            .then(a.kind.rank_order().cmp(&b.kind.rank_order()))
    });
    Ok(ModelRanking { fits, skipped })
}
