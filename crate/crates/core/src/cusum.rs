// SPDX-License-Identifier: MIT OR Apache-2.0

//! CUSUM mean-shift contrast and the random-interval machinery behind WBS2.
//!
//! Index ranges are 0-based and half-open. A split at `b` inside
//! `[start, end)` contrasts `x[start..b]` against `x[b..end]`; `b` is also
//! the change-point label used across the crate (first index of the right
//! segment). The contrast weights are chosen so that a constant series
//! scores exactly zero and an isolated mean shift is maximized exactly at
//! the shift.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::rng::RngStream;
use crate::series::TimeSeries;

/// Half-open index interval `[start, end)` holding at least two points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    start: usize,
    end: usize,
}

#[allow(clippy::len_without_is_empty)]
impl Interval {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if end < start + 2 {
            return Err(Error::invalid_argument(format!(
                "interval [{start}, {end}) must hold at least two points"
            )));
        }
        Ok(Interval { start, end })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }
}

/// A proposed change-point: split position, |CUSUM| magnitude and the
/// interval that produced it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    pub split: usize,
    pub magnitude: f64,
    pub interval: Interval,
}

/// Prefix sums (Neumaier-compensated) giving O(1) range sums and CUSUM
/// values after O(n) setup.
#[derive(Clone, Debug)]
pub struct PrefixSums {
    sums: Vec<f64>,
}

impl PrefixSums {
    pub fn new(x: &TimeSeries) -> Self {
        let values = x.values();
        let mut sums = Vec::with_capacity(values.len() + 1);
        sums.push(0.0);
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for &v in values {
            let t = sum + v;
            if math::abs(sum) >= math::abs(v) {
                comp += (sum - t) + v;
            } else {
                comp += (v - t) + sum;
            }
            sum = t;
            sums.push(sum + comp);
        }
        PrefixSums { sums }
    }

    pub fn series_len(&self) -> usize {
        self.sums.len() - 1
    }

    /// Sum of `x[start..end]`.
    pub fn range_sum(&self, start: usize, end: usize) -> f64 {
        self.sums[end] - self.sums[start]
    }

    /// CUSUM contrast of `x[start..split]` against `x[split..end]`:
    /// with `l = split-start`, `r = end-split`, `m = end-start`,
    ///
    /// `sqrt(r/(m*l)) * sum(left) - sqrt(l/(m*r)) * sum(right)`.
    pub fn contrast(&self, start: usize, split: usize, end: usize) -> f64 {
        let left_len = (split - start) as f64;
        let right_len = (end - split) as f64;
        let total = (end - start) as f64;
        let left_sum = self.range_sum(start, split);
        let right_sum = self.range_sum(split, end);
        math::sqrt(right_len / (total * left_len)) * left_sum
            - math::sqrt(left_len / (total * right_len)) * right_sum
    }

    /// Best split (maximal |CUSUM|) inside `interval`; ties go to the
    /// smallest split.
    pub fn argmax(&self, interval: Interval) -> Candidate {
        let mut best_split = interval.start + 1;
        let mut best_magnitude = math::abs(self.contrast(interval.start, best_split, interval.end));
        for split in interval.start + 2..interval.end {
            let magnitude = math::abs(self.contrast(interval.start, split, interval.end));
            if magnitude > best_magnitude {
                best_magnitude = magnitude;
                best_split = split;
            }
        }
        Candidate {
            split: best_split,
            magnitude: best_magnitude,
            interval,
        }
    }
}

/// CUSUM contrast for one split. Builds the prefix sums, so a single call
/// costs O(n); batch work should go through [`PrefixSums`].
pub fn cusum_value(x: &TimeSeries, start: usize, split: usize, end: usize) -> Result<f64> {
    if start >= split || split >= end || end > x.len() {
        return Err(Error::invalid_argument(format!(
            "split indices must satisfy start < split < end <= n, got ({start}, {split}, {end}) with n = {}",
            x.len()
        )));
    }
    Ok(PrefixSums::new(x).contrast(start, split, end))
}

/// Best split over `interval` of `x`; ties go to the smallest split.
pub fn argmax_cusum(x: &TimeSeries, interval: Interval) -> Result<Candidate> {
    if interval.end > x.len() {
        return Err(Error::invalid_argument(format!(
            "interval [{}, {}) exceeds series length {}",
            interval.start,
            interval.end,
            x.len()
        )));
    }
    Ok(PrefixSums::new(x).argmax(interval))
}

/// Draw `m` random subintervals of `[start, end)` and append the full
/// interval.
///
/// Both endpoints are sampled uniformly without replacement from the
/// contained positions and ordered, so every admissible subinterval is
/// equally likely. Deterministic given the stream.
pub fn draw_intervals(
    start: usize,
    end: usize,
    m: usize,
    rng: &mut RngStream,
) -> Result<Vec<Interval>> {
    let full = Interval::new(start, end)?;
    if m == 0 {
        return Err(Error::invalid_argument("at least one interval must be drawn"));
    }
    let len = full.len();
    let mut intervals = Vec::with_capacity(m + 1);
    for _ in 0..m {
        let mut a = rng.next_index(len);
        let mut b = loop {
            let b = rng.next_index(len);
            if b != a {
                break b;
            }
        };
        if b < a {
            core::mem::swap(&mut a, &mut b);
        }
        intervals.push(Interval {
            start: start + a,
            end: start + b + 1,
        });
    }
    intervals.push(full);
    Ok(intervals)
}

/// Every subinterval of `[start, end)` with at least two points, in
/// lexicographic order. Used instead of sampling when a segment admits
/// fewer distinct intervals than would be drawn.
pub fn enumerate_intervals(start: usize, end: usize) -> Result<Vec<Interval>> {
    let full = Interval::new(start, end)?;
    let len = full.len();
    let mut intervals = Vec::with_capacity(len * (len - 1) / 2);
    for a in 0..len - 1 {
        for b in a + 1..len {
            intervals.push(Interval {
                start: start + a,
                end: start + b + 1,
            });
        }
    }
    Ok(intervals)
}
