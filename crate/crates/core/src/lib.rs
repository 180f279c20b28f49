// SPDX-License-Identifier: MIT OR Apache-2.0

//! Change-point detection for piecewise-constant means in Gaussian noise.
//!
//! The detection pipeline couples Wild Binary Segmentation 2 ([`wbs2`]),
//! which produces a complete magnitude-ranked path of CUSUM candidates, with
//! the steepest-drop-to-low-levels selection rule ([`sdll`]) that decides how
//! many of those candidates are real change-points. Around the detector sit
//! seeded generators for processes that are easily mistaken for frequent
//! change-points ([`dgp`]), a replication harness ([`montecarlo`]) and
//! BIC-ranked model comparisons ([`diagnostics`]) that separate genuine mean
//! shifts from systematic dynamics such as a stochastic trend or threshold
//! cycling.
//!
//! The crate is `no_std`-compatible (an allocator is required): build with
//! `--no-default-features --features libm`.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("wbs2sdll-core requires either the `std` or the `libm` feature");

extern crate alloc;

pub mod cusum;
pub mod dgp;
pub mod diagnostics;
pub mod error;
mod math;
pub mod montecarlo;
pub mod rng;
pub mod sdll;
pub mod series;
pub mod wbs2;

pub use cusum::{
    argmax_cusum, cusum_value, draw_intervals, enumerate_intervals, Candidate, Interval,
    PrefixSums,
};
pub use dgp::{
    simulate_piecewise, simulate_random_walk, simulate_setar1, DgpKind, DgpSpec, DEFAULT_SETAR_A,
    DEFAULT_SETAR_B, DEFAULT_SETAR_TAU,
};
pub use diagnostics::{
    compare_models, default_threshold_grid, fit_ar1, fit_random_walk, fit_setar1, ModelFit,
    ModelKind, ModelRanking, SkippedFit,
};
pub use error::{Error, Result};
#[cfg(feature = "rayon")]
pub use montecarlo::run_mc_parallel;
pub use montecarlo::{run_mc, summarize, McSummary};
pub use rng::RngStream;
pub use sdll::{detect, sdll_select, DetectResult, SdllConfig};
pub use series::{
    fitted_signal, mad_sigma, mad_sigma_with_floor, segment_means, NoiseScale, Segmentation,
    TimeSeries,
};
pub use wbs2::{wbs2_candidates, Wbs2Config};
