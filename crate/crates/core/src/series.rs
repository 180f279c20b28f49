// SPDX-License-Identifier: MIT OR Apache-2.0

//! Series container, segment-mean fitting and the robust noise scale.
//!
//! Change-point convention used everywhere in this crate: a change-point at
//! position `b` (0-based, `1 <= b <= n-1`) means the mean shifts between
//! observations `b-1` and `b`, i.e. `b` is the first index of the new
//! segment.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Default floor substituted for a degenerate (zero) noise-scale estimate.
pub const DEFAULT_SIGMA_FLOOR: f64 = 1e-12;

/// Third quartile of the standard normal, the MAD consistency constant.
const NORMAL_QUARTILE: f64 = 0.674_489_750_196_082;

/// An observed series: at least one value, every value finite.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
}

#[allow(clippy::len_without_is_empty)]
impl TimeSeries {
    /// Wrap `values`, rejecting empty input and non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid_argument("series must hold at least one value"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid_argument(format!(
                "non-finite value at index {i}"
            )));
        }
        Ok(TimeSeries { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// A piecewise-constant description of a series of length `n`: sorted
/// change-points and the per-segment sample means.
#[derive(Clone, Debug, PartialEq)]
pub struct Segmentation {
    changepoints: Vec<usize>,
    means: Vec<f64>,
    n: usize,
}

impl Segmentation {
    pub fn changepoints(&self) -> &[usize] {
        &self.changepoints
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Length of the series this segmentation refers to.
    pub fn series_len(&self) -> usize {
        self.n
    }

    pub fn segment_count(&self) -> usize {
        self.means.len()
    }
}

/// Check that `changepoints` is strictly increasing with every element in
/// `[1, n-1]`.
pub(crate) fn validate_changepoints(changepoints: &[usize], n: usize) -> Result<()> {
    let mut prev = 0usize;
    for &cp in changepoints {
        if cp < 1 || cp > n.saturating_sub(1) {
            return Err(Error::invalid_argument(format!(
                "change-point {cp} out of range [1, {}]",
                n.saturating_sub(1)
            )));
        }
        if cp <= prev && prev != 0 {
            return Err(Error::invalid_argument(format!(
                "change-points must be strictly increasing, found {prev} then {cp}"
            )));
        }
        prev = cp;
    }
    Ok(())
}

/// Fit per-segment sample means for the segments induced by `changepoints`.
///
/// The segment averages are exactly the least-squares piecewise-constant
/// fit with those jump locations.
pub fn segment_means(x: &TimeSeries, changepoints: &[usize]) -> Result<Segmentation> {
    let n = x.len();
    validate_changepoints(changepoints, n)?;
    let values = x.values();
    let mut means = Vec::with_capacity(changepoints.len() + 1);
    let mut start = 0usize;
    for &end in changepoints.iter().chain(core::iter::once(&n)) {
        let segment = &values[start..end];
        means.push(segment.iter().sum::<f64>() / segment.len() as f64);
        start = end;
    }
    Ok(Segmentation {
        changepoints: changepoints.to_vec(),
        means,
        n,
    })
}

/// Reconstruct the step function described by `seg` as a full-length series.
pub fn fitted_signal(seg: &Segmentation) -> TimeSeries {
    let mut values = Vec::with_capacity(seg.n);
    for (j, &end) in seg
        .changepoints
        .iter()
        .chain(core::iter::once(&seg.n))
        .enumerate()
    {
        values.resize(end, seg.means[j]);
    }
    debug_assert_eq!(values.len(), seg.n);
    TimeSeries { values }
}

/// A robust noise-scale estimate; `degenerate` marks a zero median that was
/// replaced by the floor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseScale {
    pub sigma: f64,
    pub degenerate: bool,
}

/// [`mad_sigma_with_floor`] with the default floor of `1e-12`.
pub fn mad_sigma(x: &TimeSeries) -> Result<NoiseScale> {
    mad_sigma_with_floor(x, DEFAULT_SIGMA_FLOOR)
}

/// Noise standard deviation estimated from the median absolute first
/// difference: `median |x_{t+1} - x_t| / (sqrt(2) * 0.6744897501...)`.
///
/// Differencing removes any piecewise-constant mean except at the jumps,
/// and the median ignores those, so the estimate is robust to an arbitrary
/// (minority) set of shifts. A zero median yields `sigma_floor` with the
/// degeneracy flag set, never a plain zero.
pub fn mad_sigma_with_floor(x: &TimeSeries, sigma_floor: f64) -> Result<NoiseScale> {
    if x.len() < 2 {
        return Err(Error::invalid_argument(
            "mad_sigma needs at least two observations",
        ));
    }
    if !sigma_floor.is_finite() || sigma_floor <= 0.0 {
        return Err(Error::invalid_argument("sigma floor must be positive"));
    }
    let values = x.values();
    let mut diffs: Vec<f64> = values.windows(2).map(|w| math::abs(w[1] - w[0])).collect();
    let median = median_in_place(&mut diffs);
    if median <= 0.0 {
        Ok(NoiseScale {
            sigma: sigma_floor,
            degenerate: true,
        })
    } else {
        Ok(NoiseScale {
            sigma: median / (core::f64::consts::SQRT_2 * NORMAL_QUARTILE),
            degenerate: false,
        })
    }
}

/// Median with the usual mid-point convention for even lengths. Reorders
/// the slice.
fn median_in_place(values: &mut [f64]) -> f64 {
    let n = values.len();
    debug_assert!(n > 0);
    let mid = n / 2;
    let (below, pivot, _) = values.select_nth_unstable_by(mid, f64::total_cmp);
    if n % 2 == 1 {
        *pivot
    } else {
        let lower = below.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (lower + *pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn series(values: &[f64]) -> TimeSeries {
        TimeSeries::new(values.to_vec()).unwrap()
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(TimeSeries::new(vec![]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn segment_means_matches_hand_examples() {
        let seg = segment_means(&series(&[0.0, 0.0, 1.0, 1.0]), &[2]).unwrap();
        assert_eq!(seg.means(), &[0.0, 1.0]);

        let seg = segment_means(&series(&[1.0, 2.0, 3.0]), &[]).unwrap();
        assert_eq!(seg.means(), &[2.0]);
    }

    #[test]
    fn segment_means_rejects_bad_changepoints() {
        let x = series(&[0.0, 1.0, 2.0, 3.0]);
        assert!(segment_means(&x, &[0]).is_err());
        assert!(segment_means(&x, &[4]).is_err());
        assert!(segment_means(&x, &[2, 2]).is_err());
        assert!(segment_means(&x, &[3, 1]).is_err());
    }

    #[test]
    fn segment_means_matches_bruteforce_on_random_input() {
        let mut rng = crate::rng::RngStream::new(5, 0);
        let values: Vec<f64> = (0..20).map(|_| rng.next_f64()).collect();
        let x = series(&values);
        let cps = [5usize, 13];
        let seg = segment_means(&x, &cps).unwrap();

        // Independent brute force: bucket each observation by its segment.
        let bounds = [0usize, 5, 13, 20];
        for j in 0..3 {
            let mut sum = 0.0;
            let mut count = 0.0;
            for v in &values[bounds[j]..bounds[j + 1]] {
                sum += v;
                count += 1.0;
            }
            let expected = sum / count;
            assert!((seg.means()[j] - expected).abs() <= 1e-12 * expected.abs().max(1.0));
        }
    }

    #[test]
    fn fitted_signal_reconstructs_steps() {
        let seg = segment_means(&series(&[0.0, 0.0, 1.0, 1.0]), &[2]).unwrap();
        assert_eq!(fitted_signal(&seg).values(), &[0.0, 0.0, 1.0, 1.0]);

        let seg = segment_means(&series(&[5.0, 5.0, 5.0]), &[]).unwrap();
        assert_eq!(fitted_signal(&seg).values(), &[5.0, 5.0, 5.0]);
    }

    #[test]
    fn noiseless_step_roundtrip_has_zero_residual() {
        let x = series(&[2.0, 2.0, 2.0, -1.0, -1.0, 4.0]);
        let seg = segment_means(&x, &[3, 5]).unwrap();
        let fit = fitted_signal(&seg);
        for (a, b) in x.values().iter().zip(fit.values()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn mad_sigma_hand_example() {
        let x = series(&[0.0, 1.0, 0.0, 1.0, 0.0]);
        let scale = mad_sigma(&x).unwrap();
        let expected = 1.0 / (core::f64::consts::SQRT_2 * 0.674_489_750_196_082);
        assert!(!scale.degenerate);
        assert!((scale.sigma - expected).abs() < 1e-12);
        assert!((scale.sigma - 1.04836).abs() < 1e-5);
    }

    #[test]
    fn mad_sigma_flags_constant_series() {
        let scale = mad_sigma(&series(&[3.0, 3.0, 3.0, 3.0])).unwrap();
        assert!(scale.degenerate);
        assert_eq!(scale.sigma, DEFAULT_SIGMA_FLOOR);
    }

    #[test]
    fn mad_sigma_ignores_a_single_jump() {
        let x = series(&[0.0, 0.0, 0.0, 10.0, 10.0, 10.0]);
        let scale = mad_sigma(&x).unwrap();
        assert!(scale.degenerate);
        assert_eq!(scale.sigma, DEFAULT_SIGMA_FLOOR);
    }

    #[test]
    fn mad_sigma_needs_two_points() {
        assert!(mad_sigma(&series(&[1.0])).is_err());
    }

    #[test]
    fn refinement_never_increases_rss() {
        let mut rng = crate::rng::RngStream::new(9, 1);
        let values: Vec<f64> = (0..40).map(|_| rng.next_gaussian()).collect();
        let x = series(&values);

        let rss = |cps: &[usize]| -> f64 {
            let fit = fitted_signal(&segment_means(&x, cps).unwrap());
            x.values()
                .iter()
                .zip(fit.values())
                .map(|(a, b)| (a - b) * (a - b))
                .sum()
        };

        let coarse = rss(&[20]);
        let fine = rss(&[10, 20, 30]);
        assert!(fine <= coarse + 1e-9);
    }
}
