// SPDX-License-Identifier: MIT OR Apache-2.0

//! JSON documents emitted by the CLI subcommands. Field names are part of
//! the tool's stable output contract; numbers are serialized in shortest
//! round-trip form, so re-reading reproduces the exact values.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wbs2sdll_core::{
    DetectResult, DgpKind, DgpSpec, McSummary, ModelRanking, SdllConfig, Wbs2Config,
};

use crate::error::CliError;

/// Candidates kept in the `detect` document.
pub const MAX_CANDIDATES_IN_JSON: usize = 50;

#[derive(Debug, Serialize, Deserialize)]
pub struct CandidateDoc {
    pub b: usize,
    pub magnitude: f64,
}

/// Output of `detect`.
#[derive(Debug, Serialize, Deserialize)]
pub struct DetectDoc {
    pub n: usize,
    pub sigma_hat: f64,
    pub sigma_degenerate: bool,
    pub q_hat: usize,
    pub changepoints: Vec<usize>,
    pub means: Vec<f64>,
    pub candidates: Vec<CandidateDoc>,
}

impl DetectDoc {
    pub fn from_result(result: &DetectResult) -> Self {
        DetectDoc {
            n: result.segmentation.series_len(),
            sigma_hat: result.sigma_hat,
            sigma_degenerate: result.sigma_degenerate,
            q_hat: result.q_hat,
            changepoints: result.segmentation.changepoints().to_vec(),
            means: result.segmentation.means().to_vec(),
            candidates: result
                .candidates
                .iter()
                .take(MAX_CANDIDATES_IN_JSON)
                .map(|c| CandidateDoc {
                    b: c.split,
                    magnitude: c.magnitude,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DgpSpecDoc {
    RandomWalk {
        n: usize,
        sigma: f64,
        seed: u64,
        y0: f64,
    },
    Setar1 {
        n: usize,
        sigma: f64,
        seed: u64,
        a: f64,
        b: f64,
        tau: f64,
        y0: f64,
        burn_in: usize,
    },
    PiecewiseConstant {
        n: usize,
        sigma: f64,
        seed: u64,
        breaks: Vec<usize>,
        levels: Vec<f64>,
    },
}

impl From<&DgpSpec> for DgpSpecDoc {
    fn from(spec: &DgpSpec) -> Self {
        match &spec.kind {
            DgpKind::RandomWalk { y0 } => DgpSpecDoc::RandomWalk {
                n: spec.n,
                sigma: spec.sigma,
                seed: spec.seed,
                y0: *y0,
            },
            DgpKind::Setar1 {
                a,
                b,
                tau,
                y0,
                burn_in,
            } => DgpSpecDoc::Setar1 {
                n: spec.n,
                sigma: spec.sigma,
                seed: spec.seed,
                a: *a,
                b: *b,
                tau: *tau,
                y0: *y0,
                burn_in: *burn_in,
            },
            DgpKind::PiecewiseConstant { breaks, levels } => DgpSpecDoc::PiecewiseConstant {
                n: spec.n,
                sigma: spec.sigma,
                seed: spec.seed,
                breaks: breaks.clone(),
                levels: levels.clone(),
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Wbs2Doc {
    pub intervals_per_segment: usize,
    pub min_segment_len: usize,
    pub seed: u64,
}

impl From<&Wbs2Config> for Wbs2Doc {
    fn from(cfg: &Wbs2Config) -> Self {
        Wbs2Doc {
            intervals_per_segment: cfg.intervals_per_segment,
            min_segment_len: cfg.min_segment_len,
            seed: cfg.seed,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SdllDoc {
    pub threshold_scale: f64,
    pub min_threshold_scale: f64,
    pub magnitude_floor: f64,
}

impl From<&SdllConfig> for SdllDoc {
    fn from(cfg: &SdllConfig) -> Self {
        SdllDoc {
            threshold_scale: cfg.threshold_scale,
            min_threshold_scale: cfg.min_threshold_scale,
            magnitude_floor: cfg.magnitude_floor,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ConfigsDoc {
    pub wbs2: Wbs2Doc,
    pub sdll: SdllDoc,
}

/// Output of `mc`.
#[derive(Debug, Serialize, Deserialize)]
pub struct McDoc {
    #[serde(rename = "R")]
    pub replications: usize,
    pub mean: f64,
    pub sd: f64,
    pub counts: Vec<usize>,
    pub spec: DgpSpecDoc,
    pub configs: ConfigsDoc,
}

impl McDoc {
    pub fn from_summary(summary: &McSummary) -> Self {
        McDoc {
            replications: summary.replications,
            mean: summary.mean,
            sd: summary.sd,
            counts: summary.counts.clone(),
            spec: (&summary.spec).into(),
            configs: ConfigsDoc {
                wbs2: (&summary.wbs2).into(),
                sdll: (&summary.sdll).into(),
            },
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ModelDoc {
    pub kind: String,
    pub params: Vec<f64>,
    pub ssr: f64,
    pub p: usize,
    pub bic: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SkippedDoc {
    pub kind: String,
    pub reason: String,
}

/// Output of `diagnose`: models sorted by BIC ascending.
#[derive(Debug, Serialize, Deserialize)]
pub struct DiagnoseDoc {
    pub models: Vec<ModelDoc>,
    pub skipped: Vec<SkippedDoc>,
}

impl DiagnoseDoc {
    pub fn from_ranking(ranking: &ModelRanking) -> Self {
        DiagnoseDoc {
            models: ranking
                .fits
                .iter()
                .map(|fit| ModelDoc {
                    kind: fit.kind.name().to_string(),
                    params: fit.params.clone(),
                    ssr: fit.ssr,
                    p: fit.param_count,
                    bic: fit.bic,
                })
                .collect(),
            skipped: ranking
                .skipped
                .iter()
                .map(|s| SkippedDoc {
                    kind: s.kind.name().to_string(),
                    reason: s.reason.clone(),
                })
                .collect(),
        }
    }
}

pub fn to_json_string<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents are serializable");
    text.push('\n');
    text
}

pub fn write_json<T: Serialize>(doc: &T, path: &Path) -> Result<(), CliError> {
    fs::write(path, to_json_string(doc))
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use wbs2sdll_core::{detect, run_mc, summarize, TimeSeries};

    #[test]
    fn empty_changepoints_serialize_as_an_empty_array() {
        let x = TimeSeries::new(vec![1.0; 30]).unwrap();
        let det = detect(&x, &Wbs2Config::default(), &SdllConfig::default()).unwrap();
        let doc = DetectDoc::from_result(&det);
        let text = to_json_string(&doc);
        assert!(text.contains("\"changepoints\": []"), "{text}");
        assert!(text.contains("\"q_hat\": 0"));
    }

    #[test]
    fn candidates_are_truncated_to_fifty() {
        let values: Vec<f64> = (0..200).map(|t| (t % 17) as f64).collect();
        let x = TimeSeries::new(values).unwrap();
        let det = detect(&x, &Wbs2Config::default(), &SdllConfig::default()).unwrap();
        assert_eq!(det.candidates.len(), 199);
        let doc = DetectDoc::from_result(&det);
        assert_eq!(doc.candidates.len(), MAX_CANDIDATES_IN_JSON);
    }

    #[test]
    fn mc_roundtrip_preserves_mean_and_sd() {
        let spec = DgpSpec {
            kind: DgpKind::RandomWalk { y0: 0.0 },
            n: 80,
            sigma: 1.0,
            seed: 3,
        };
        let summary = run_mc(&spec, &Wbs2Config::default(), &SdllConfig::default(), 5, 11).unwrap();
        let doc = McDoc::from_summary(&summary);
        let text = to_json_string(&doc);
        let back: McDoc = serde_json::from_str(&text).unwrap();
        assert!((back.mean - summary.mean).abs() <= 1e-12);
        assert!((back.sd - summary.sd).abs() <= 1e-12);
        assert_eq!(back.counts, summary.counts);
        let (mean, sd) = summarize(&back.counts).unwrap();
        assert_eq!(mean, back.mean);
        assert_eq!(sd, back.sd);
    }

    #[test]
    fn spec_doc_is_tagged_by_kind() {
        let spec = DgpSpec {
            kind: DgpKind::Setar1 {
                a: 0.7,
                b: 0.7,
                tau: 1.0,
                y0: 0.0,
                burn_in: 0,
            },
            n: 500,
            sigma: 1.0,
            seed: 7,
        };
        let text = to_json_string(&DgpSpecDoc::from(&spec));
        assert!(text.contains("\"kind\": \"setar1\""), "{text}");
        assert!(text.contains("\"tau\": 1.0"), "{text}");
    }
}
