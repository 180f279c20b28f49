// SPDX-License-Identifier: MIT OR Apache-2.0

//! Subcommand definitions and dispatch.
//!
//! Exit codes: 0 success, 1 usage error, 2 data/numeric error. Every
//! subcommand accepts `--config <path>` naming a flat `key = value` file
//! whose keys are long option names; explicit flags win over file entries.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use wbs2sdll_core::{
    compare_models, detect, run_mc_parallel, DgpKind, DgpSpec, SdllConfig, Wbs2Config,
    DEFAULT_SETAR_A, DEFAULT_SETAR_B, DEFAULT_SETAR_TAU,
};

use crate::csv::{format_csv, read_csv, write_csv};
use crate::error::{CliError, EXIT_OK};
use crate::json::{to_json_string, write_json, DetectDoc, DiagnoseDoc, McDoc};
use crate::svg::write_svg;

#[derive(Debug, Parser)]
#[command(
    name = "wbs2sdll",
    version,
    about = "Change-point detection with Wild Binary Segmentation 2 and steepest-drop model selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate a series from a configured generator and write CSV.
    Simulate(SimulateArgs),
    /// Detect change-points in a CSV series; write JSON and an optional SVG.
    Detect(DetectArgs),
    /// Monte Carlo replications of simulate-then-detect; write a JSON summary.
    Mc(McArgs),
    /// Rank competing model fits for a CSV series; write JSON.
    Diagnose(DiagnoseArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    /// Driftless Gaussian random walk.
    Rw,
    /// Self-exciting threshold AR(1).
    Setar,
    /// Piecewise-constant mean plus Gaussian noise.
    Pc,
}

#[derive(Debug, Args)]
struct DgpArgs {
    /// Generator kind.
    #[arg(long, value_enum, default_value_t = KindArg::Rw)]
    kind: KindArg,

    /// Series length.
    #[arg(long, default_value_t = 500)]
    n: usize,

    /// Noise standard deviation.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,

    /// Initial condition (rw and setar kinds).
    #[arg(long, default_value_t = 0.0)]
    y0: f64,

    /// SETAR active-regime intercept.
    #[arg(long, default_value_t = DEFAULT_SETAR_A)]
    a: f64,

    /// SETAR active-regime slope.
    #[arg(long, default_value_t = DEFAULT_SETAR_B)]
    b: f64,

    /// SETAR threshold.
    #[arg(long, default_value_t = DEFAULT_SETAR_TAU)]
    tau: f64,

    /// SETAR warm-up steps discarded before recording.
    #[arg(long, default_value_t = 0)]
    burn_in: usize,

    /// Piecewise-constant break positions, comma separated (e.g. 100,250).
    #[arg(long, value_delimiter = ',')]
    breaks: Vec<usize>,

    /// Piecewise-constant segment levels, comma separated (one more than
    /// breaks).
    #[arg(long, value_delimiter = ',')]
    levels: Vec<f64>,
}

impl DgpArgs {
    fn to_spec(&self, seed: u64) -> Result<DgpSpec, CliError> {
        let kind = match self.kind {
            KindArg::Rw => DgpKind::RandomWalk { y0: self.y0 },
            KindArg::Setar => DgpKind::Setar1 {
                a: self.a,
                b: self.b,
                tau: self.tau,
                y0: self.y0,
                burn_in: self.burn_in,
            },
            KindArg::Pc => DgpKind::PiecewiseConstant {
                breaks: self.breaks.clone(),
                levels: self.levels.clone(),
            },
        };
        let spec = DgpSpec {
            kind,
            n: self.n,
            sigma: self.sigma,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
struct DetectorArgs {
    /// Random intervals per segment in WBS2.
    #[arg(long, default_value_t = 100)]
    m: usize,

    /// Smallest segment length WBS2 still splits.
    #[arg(long, default_value_t = 2)]
    min_len: usize,

    /// Multiplier on the selection threshold sqrt(2 ln n).
    #[arg(long, default_value_t = 1.75)]
    c_thr: f64,

    /// Fraction of the threshold below which ranked magnitudes are ignored.
    #[arg(long, default_value_t = 0.05)]
    c_thr_min: f64,

    /// Floor for normalized magnitudes before logs.
    #[arg(long, default_value_t = 1e-12)]
    eps_mag: f64,
}

impl DetectorArgs {
    fn wbs2(&self, seed: u64) -> Wbs2Config {
        Wbs2Config {
            intervals_per_segment: self.m,
            min_segment_len: self.min_len,
            seed,
        }
    }

    fn sdll(&self) -> SdllConfig {
        SdllConfig {
            threshold_scale: self.c_thr,
            min_threshold_scale: self.c_thr_min,
            magnitude_floor: self.eps_mag,
        }
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[command(flatten)]
    dgp: DgpArgs,

    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Flat key=value defaults file; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DetectArgs {
    /// Input CSV path.
    #[arg(long)]
    input: PathBuf,

    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also render the fit overlay as SVG to this path.
    #[arg(long)]
    svg: Option<PathBuf>,

    #[command(flatten)]
    det: DetectorArgs,

    /// Seed for the WBS2 interval draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Flat key=value defaults file; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct McArgs {
    #[command(flatten)]
    dgp: DgpArgs,

    #[command(flatten)]
    det: DetectorArgs,

    /// Number of replications.
    #[arg(long, default_value_t = 200)]
    r: usize,

    /// Master seed controlling every replication.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Flat key=value defaults file; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DiagnoseArgs {
    /// Input CSV path.
    #[arg(long)]
    input: PathBuf,

    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,

    #[command(flatten)]
    det: DetectorArgs,

    /// Seed for the WBS2 interval draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Flat key=value defaults file; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Run the CLI; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    match run_inner(argv) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            match &err {
                CliError::Usage(msg) => eprintln!("{msg}"),
                CliError::Data(msg) => eprintln!("error: {msg}"),
            }
            err.exit_code()
        }
    }
}

fn run_inner(argv: Vec<OsString>) -> Result<(), CliError> {
    let argv = apply_config_file(argv)?;
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Detect(args) => cmd_detect(args),
        Command::Mc(args) => cmd_mc(args),
        Command::Diagnose(args) => cmd_diagnose(args),
    }
}

/// Pre-scan for `--config <path>` and append `--key value` tokens for every
/// file entry whose flag is not already present on the command line.
fn apply_config_file(mut argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut path: Option<PathBuf> = None;
    let mut iter = argv.iter();
    while let Some(token) = iter.next() {
        if token == "--config" {
            if let Some(value) = iter.next() {
                path = Some(PathBuf::from(value));
            }
        } else if let Some(text) = token.to_str() {
            if let Some(value) = text.strip_prefix("--config=") {
                path = Some(PathBuf::from(value));
            }
        }
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::Data(format!("cannot read config {}: {e}", path.display())))?;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "{}: line {}: expected key = value",
                path.display(),
                idx + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(CliError::Usage(format!(
                "{}: line {}: expected key = value",
                path.display(),
                idx + 1
            )));
        }
        let flag = format!("--{key}");
        let given = argv.iter().any(|t| {
            t == flag.as_str()
                || t.to_str()
                    .is_some_and(|s| s.starts_with(&format!("{flag}=")))
        });
        if !given {
            argv.push(flag.into());
            argv.push(value.into());
        }
    }
    Ok(argv)
}

fn emit_text(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let spec = args.dgp.to_spec(args.seed)?;
    let x = spec.simulate(0)?;
    match &args.out {
        Some(path) => write_csv(&x, path),
        None => {
            print!("{}", format_csv(&x));
            Ok(())
        }
    }
}

fn cmd_detect(args: DetectArgs) -> Result<(), CliError> {
    let x = read_csv(&args.input)?;
    let result = detect(&x, &args.det.wbs2(args.seed), &args.det.sdll())?;
    let doc = DetectDoc::from_result(&result);
    match &args.out {
        Some(path) => write_json(&doc, path)?,
        None => emit_text(&to_json_string(&doc), None)?,
    }
    if let Some(svg_path) = &args.svg {
        write_svg(&x, &result.segmentation, svg_path)?;
    }
    Ok(())
}

fn cmd_mc(args: McArgs) -> Result<(), CliError> {
    let spec = args.dgp.to_spec(args.seed)?;
    let summary = run_mc_parallel(
        &spec,
        &args.det.wbs2(args.seed),
        &args.det.sdll(),
        args.r,
        args.seed,
    )?;
    let doc = McDoc::from_summary(&summary);
    match &args.out {
        Some(path) => write_json(&doc, path),
        None => emit_text(&to_json_string(&doc), None),
    }
}

fn cmd_diagnose(args: DiagnoseArgs) -> Result<(), CliError> {
    let x = read_csv(&args.input)?;
    let result = detect(&x, &args.det.wbs2(args.seed), &args.det.sdll())?;
    let ranking = compare_models(&x, &result)?;
    let doc = DiagnoseDoc::from_ranking(&ranking);
    match &args.out {
        Some(path) => write_json(&doc, path),
        None => emit_text(&to_json_string(&doc), None),
    }
}
