// SPDX-License-Identifier: MIT OR Apache-2.0

//! Wild Binary Segmentation 2.
//!
//! WBS2 recursively splits the series at the strongest CUSUM candidate
//! found among freshly drawn random subintervals of the current segment —
//! re-drawing per segment is what distinguishes it from one-shot WBS. The
//! recursion runs to exhaustion, so the output is a complete solution path:
//! with the default minimum segment length of 2 it contains exactly `n - 1`
//! candidates whose splits are a permutation of `1..n-1`. Deciding how many
//! of them are real change-points is the job of the selection rule in
//! [`crate::sdll`].

use alloc::vec;
use alloc::vec::Vec;

use crate::cusum::{draw_intervals, enumerate_intervals, Candidate, PrefixSums};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::series::TimeSeries;

/// Tuning constants for [`wbs2_candidates`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wbs2Config {
    /// Random intervals drawn per segment (`M`). Segments admitting fewer
    /// distinct subintervals are enumerated exhaustively instead.
    pub intervals_per_segment: usize,
    /// Smallest segment length that is still split.
    pub min_segment_len: usize,
    /// Seed for the interval draws.
    pub seed: u64,
}

impl Default for Wbs2Config {
    fn default() -> Self {
        Wbs2Config {
            intervals_per_segment: 100,
            min_segment_len: 2,
            seed: 0,
        }
    }
}

impl Wbs2Config {
    fn validate(&self) -> Result<()> {
        if self.intervals_per_segment == 0 {
            return Err(Error::invalid_argument(
                "intervals_per_segment must be at least 1",
            ));
        }
        if self.min_segment_len < 2 {
            return Err(Error::invalid_argument("min_segment_len must be at least 2"));
        }
        Ok(())
    }
}

/// Run the WBS2 recursion over the whole series and return every emitted
/// candidate, sorted by magnitude (decreasing; ties by split position).
///
/// Each segment evaluates the argmax-CUSUM of its drawn intervals plus the
/// segment itself — including the full segment guarantees that a noiseless
/// isolated jump is located exactly — and recursion continues on both sides
/// of the winning split until segments fall under `min_segment_len`.
pub fn wbs2_candidates(x: &TimeSeries, cfg: &Wbs2Config) -> Result<Vec<Candidate>> {
    cfg.validate()?;
    let n = x.len();
    if n < 2 {
        return Err(Error::invalid_argument(
            "wbs2 needs at least two observations",
        ));
    }
    let prefix = PrefixSums::new(x);
    let mut rng = RngStream::new(cfg.seed, 0);
    let mut candidates = Vec::with_capacity(n - 1);
    let mut stack = vec![(0usize, n)];
    while let Some((start, end)) = stack.pop() {
        let len = end - start;
        if len < cfg.min_segment_len {
            continue;
        }
        let distinct_pairs = len * (len - 1) / 2;
        let intervals = if distinct_pairs <= cfg.intervals_per_segment {
            enumerate_intervals(start, end)?
        } else {
            draw_intervals(start, end, cfg.intervals_per_segment, &mut rng)?
        };
        let mut best: Option<Candidate> = None;
        for interval in intervals {
            let cand = prefix.argmax(interval);
            let take = match &best {
                None => true,
                Some(b) => {
                    cand.magnitude > b.magnitude
                        || (cand.magnitude == b.magnitude && cand.split < b.split)
                }
            };
            if take {
                best = Some(cand);
            }
        }
        let best = best.expect("a segment of length >= 2 admits at least one interval");
        // Left segment is pushed last so it is explored first; traversal
        // order fixes the rng consumption and keeps runs reproducible.
        stack.push((best.split, end));
        stack.push((start, best.split));
        candidates.push(best);
    }
    candidates.sort_by(|a, b| {
        b.magnitude
            .total_cmp(&a.magnitude)
            .then(a.split.cmp(&b.split))
    });
    Ok(candidates)
}
