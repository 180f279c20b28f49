// SPDX-License-Identifier: MIT OR Apache-2.0

//! Deterministic seeded random streams.
//!
//! [`RngStream`] is a SplitMix64 counter generator keyed by a
//! `(seed, stream)` pair. The same pair reproduces the same draw sequence on
//! every platform, and distinct stream ids give statistically independent
//! streams, which is what lets Monte Carlo replications run in parallel
//! without sharing generator state.

use crate::math;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
const STREAM_SALT: u64 = 0x6a09_e667_f3bc_c909;

/// SplitMix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A deterministic random stream identified by `(seed, stream)`.
#[derive(Clone, Debug)]
pub struct RngStream {
    state: u64,
    spare_normal: Option<f64>,
}

impl RngStream {
    /// Open the stream identified by `(seed, stream)`.
    pub fn new(seed: u64, stream: u64) -> Self {
        let state = mix64(seed) ^ mix64(stream.wrapping_mul(GOLDEN_GAMMA).wrapping_add(STREAM_SALT));
        RngStream {
            state,
            spare_normal: None,
        }
    }

    /// Next raw 64-bit draw.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform draw in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw from `0..upper`, rejection-sampled so there is no
    /// modulo bias.
    ///
    /// Panics when `upper` is zero.
    pub fn next_index(&mut self, upper: usize) -> usize {
        assert!(upper > 0, "next_index requires a non-empty range");
        let bound = upper as u64;
        let limit = u64::MAX - u64::MAX % bound;
        loop {
            let raw = self.next_u64();
            if raw < limit {
                return (raw % bound) as usize;
            }
        }
    }

    /// Standard normal draw via the Marsaglia polar method.
    ///
    /// Normals are generated in pairs; the second one is cached and handed
    /// out by the following call.
    pub fn next_gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let scale = math::sqrt(-2.0 * math::ln(s) / s);
                self.spare_normal = Some(v * scale);
                return u * scale;
            }
        }
    }
}
