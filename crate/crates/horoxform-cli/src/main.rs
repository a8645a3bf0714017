//! Command-line driver: forward/dual transforms, inversion runs,
//! resolution sweeps, and the verification suites, reading experiment
//! configurations from JSON and writing CSV or JSON reports.

use clap::{Args, Parser, Subcommand};
use horoxform::inversion::{invert_bl, invert_mean_value, BlConfig, MeanValueConfig};
use horoxform::oracle::{self, FieldKind, RunOptions, Suite};
use horoxform::transform::{dual_zonal, forward_zonal, forward_zonal_field};
use horoxform::{HPoint, ScalarField};
use serde::Deserialize;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_VERIFY_FAIL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "horoxform",
    about = "Horospherical transform toolbox: forward/dual transforms, inversion, verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Path to the experiment configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Forward transform of the configured field on a grid of distances.
    Forward(ConfigArgs),
    /// Dual transform of the forward data on a grid of heights.
    Dual(ConfigArgs),
    /// Mean-value inversion at the configured heights.
    InvertMean(ConfigArgs),
    /// Laplace-polynomial inversion at the configured heights.
    InvertBl(ConfigArgs),
    /// Error vs. grid-resolution sweep for the inversion pipelines.
    Table(ConfigArgs),
    /// Run a verification suite and print one line per case.
    Verify {
        /// geometry | fractional | harmonic | transform | duality | inversion | all
        #[arg(long, default_value = "all")]
        suite: String,
        /// csv | json | text
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for the randomized property cases.
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Experiment configuration: the field, dimension, evaluation grid, and
/// optional pipeline overrides.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExperimentConfig {
    schema_version: u32,
    n: usize,
    field: FieldKind,
    /// Signed distances for `forward`.
    #[serde(default)]
    t_values: Vec<f64>,
    /// Heights x_{n+1} for `dual`, `invert-mean`, `invert-bl`.
    #[serde(default)]
    x_values: Vec<f64>,
    /// Grid sizes for `table`.
    #[serde(default)]
    grid_sizes: Vec<usize>,
    #[serde(default)]
    options: PipelineOptions,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PipelineOptions {
    /// Chebyshev points for sampled forward data.
    forward_points: Option<usize>,
    /// Reach of the sampled forward data in the distance variable.
    forward_t_max: Option<f64>,
    /// Left grid offset of the mean-value pipeline.
    eta: Option<f64>,
    /// Grid points of the inversion pipelines.
    grid_points: Option<usize>,
}

fn load_config(path: &PathBuf) -> Result<ExperimentConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let cfg: ExperimentConfig =
        serde_json::from_str(&text).map_err(|e| format!("invalid config: {e}"))?;
    if cfg.schema_version != 1 {
        return Err(format!(
            "unsupported schema_version {} (this build reads version 1)",
            cfg.schema_version
        ));
    }
    if !(2..=7).contains(&cfg.n) {
        return Err(format!("dimension n = {} out of the supported range", cfg.n));
    }
    Ok(cfg)
}

fn field_of(cfg: &ExperimentConfig) -> Result<ScalarField, String> {
    oracle::standard_field(&cfg.field, cfg.n).map_err(|e| e.to_string())
}

/// Closed-form forward reference when the field has one.
fn forward_reference(cfg: &ExperimentConfig, t: f64) -> Option<f64> {
    match cfg.field {
        FieldKind::Power { beta } => oracle::oracle_hf_power(beta, t, cfg.n).ok(),
        FieldKind::ExpBump { rate } => {
            // (2 pi)^delta e^{-delta t} * Gamma-free tail integral of the
            // exponential profile: available in closed form
            let d = (cfg.n as f64 - 1.0) / 2.0;
            if cfg.n == 3 {
                Some(
                    2.0 * std::f64::consts::PI / rate
                        * (-t).exp()
                        * (-rate * (t.cosh() - 1.0)).exp(),
                )
            } else if cfg.n == 2 {
                Some(
                    (2.0 * std::f64::consts::PI / rate).sqrt()
                        * (-d * t).exp()
                        * (-rate * (t.cosh() - 1.0)).exp(),
                )
            } else {
                None
            }
        }
        _ => None,
    }
}

fn true_value(cfg: &ExperimentConfig, height: f64) -> Option<f64> {
    match cfg.field {
        FieldKind::Power { beta } => Some(height.powf(-beta)),
        FieldKind::ExpBump { rate } => Some((-rate * (height - 1.0)).exp()),
        FieldKind::CompactBump { width } => {
            let u = (height - 1.0) / width;
            Some(if u < 1.0 { (1.0 - u).powi(4) } else { 0.0 })
        }
        _ => None,
    }
}

fn write_rows(
    header: &[&str],
    rows: Vec<Vec<String>>,
    out: &Option<PathBuf>,
) -> Result<(), String> {
    let target: Box<dyn std::io::Write> = match out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| format!("cannot create {}: {e}", path.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    let mut writer = csv::Writer::from_writer(target);
    writer.write_record(header).map_err(|e| e.to_string())?;
    for row in rows {
        writer.write_record(&row).map_err(|e| e.to_string())?;
    }
    writer.flush().map_err(|e| e.to_string())
}

fn fmt(v: f64) -> String {
    format!("{v:.12e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

fn rel_err(computed: f64, reference: Option<f64>) -> String {
    match reference {
        Some(r) if r != 0.0 => format!("{:.3e}", ((computed - r) / r).abs()),
        Some(r) => format!("{:.3e}", (computed - r).abs()),
        None => String::new(),
    }
}

enum RunError {
    Config(String),
    Numerical(String),
}

impl From<horoxform::Error> for RunError {
    fn from(e: horoxform::Error) -> Self {
        match e {
            horoxform::Error::NumericalFailure { .. }
            | horoxform::Error::LimitNotConvergent { .. } => RunError::Numerical(e.to_string()),
            other => RunError::Config(other.to_string()),
        }
    }
}

fn cmd_forward(args: &ConfigArgs) -> Result<(), RunError> {
    let cfg = load_config(&args.config).map_err(RunError::Config)?;
    let field = field_of(&cfg).map_err(RunError::Config)?;
    let profile = field
        .profile()
        .ok_or_else(|| RunError::Config("forward runs need a zonal field".into()))?;
    let ts = if cfg.t_values.is_empty() {
        (-10..=10).map(|k| k as f64 * 0.2).collect()
    } else {
        cfg.t_values.clone()
    };
    let mut rows = Vec::new();
    for &t in &ts {
        let computed = forward_zonal(profile, t, cfg.n)?;
        let reference = forward_reference(&cfg, t);
        rows.push(vec![
            format!("{t}"),
            fmt(computed),
            fmt_opt(reference),
            rel_err(computed, reference),
        ]);
    }
    write_rows(&["t", "computed", "reference", "rel_err"], rows, &args.out)
        .map_err(RunError::Config)
}

fn cmd_dual(args: &ConfigArgs) -> Result<(), RunError> {
    let cfg = load_config(&args.config).map_err(RunError::Config)?;
    let field = field_of(&cfg).map_err(RunError::Config)?;
    let phi = forward_zonal_field(
        &field,
        cfg.options.forward_t_max.unwrap_or(10.0),
        cfg.options.forward_points.unwrap_or(128),
    )?;
    let xs = if cfg.x_values.is_empty() {
        vec![1.0, 1.2, 1.5, 2.0, 3.0]
    } else {
        cfg.x_values.clone()
    };
    let mut rows = Vec::new();
    for &height in &xs {
        let computed = dual_zonal(phi.profile().unwrap(), height.acosh(), cfg.n)?;
        rows.push(vec![format!("{height}"), fmt(computed)]);
    }
    write_rows(&["x_height", "computed"], rows, &args.out).map_err(RunError::Config)
}

fn invert_rows(
    cfg: &ExperimentConfig,
    mean_value: bool,
    grid_override: Option<usize>,
) -> Result<(Vec<Vec<String>>, f64), RunError> {
    let field = field_of(cfg).map_err(RunError::Config)?;
    let phi = forward_zonal_field(
        &field,
        cfg.options.forward_t_max.unwrap_or(10.0),
        cfg.options.forward_points.unwrap_or(128),
    )?;
    let xs = if cfg.x_values.is_empty() {
        vec![1.0, 1.5, 2.0]
    } else {
        cfg.x_values.clone()
    };
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for &height in &xs {
        let x = unit_point(cfg.n, height)?;
        let computed = if mean_value {
            let mut mv = MeanValueConfig::default();
            if let Some(eta) = cfg.options.eta {
                mv.eta = eta;
            }
            if let Some(g) = grid_override.or(cfg.options.grid_points) {
                mv.grid_points = g;
            }
            invert_mean_value(&phi, &x, &mv)?
        } else {
            let mut bl = BlConfig::default();
            if let Some(g) = grid_override.or(cfg.options.grid_points) {
                bl.grid_points = g;
            }
            invert_bl(&phi, &x, &bl)?
        };
        let reference = true_value(cfg, height);
        if let Some(r) = reference {
            let scale = r.abs().max(1e-12);
            worst = worst.max((computed - r).abs() / scale);
        }
        rows.push(vec![
            format!("{height}"),
            fmt(computed),
            fmt_opt(reference),
            rel_err(computed, reference),
        ]);
    }
    Ok((rows, worst))
}

fn unit_point(n: usize, height: f64) -> Result<HPoint, RunError> {
    let mut dir = vec![0.0; n];
    dir[n - 1] = 1.0;
    Ok(HPoint::from_polar(height.acosh(), &dir)?)
}

fn cmd_invert(args: &ConfigArgs, mean_value: bool) -> Result<(), RunError> {
    let cfg = load_config(&args.config).map_err(RunError::Config)?;
    let (rows, _) = invert_rows(&cfg, mean_value, None)?;
    write_rows(
        &["x_height", "reconstructed", "true_value", "rel_err"],
        rows,
        &args.out,
    )
    .map_err(RunError::Config)
}

fn cmd_table(args: &ConfigArgs) -> Result<(), RunError> {
    let cfg = load_config(&args.config).map_err(RunError::Config)?;
    let grids = if cfg.grid_sizes.is_empty() {
        vec![24, 32, 48, 64, 96]
    } else {
        cfg.grid_sizes.clone()
    };
    let mut rows = Vec::new();
    for &g in &grids {
        for (label, mean_value) in [("invert-mean", true), ("invert-bl", false)] {
            let t0 = std::time::Instant::now();
            let outcome = invert_rows(&cfg, mean_value, Some(g));
            let ms = t0.elapsed().as_secs_f64() * 1e3;
            match outcome {
                Ok((_, worst)) => rows.push(vec![
                    label.to_string(),
                    g.to_string(),
                    format!("{worst:.3e}"),
                    format!("{ms:.1}"),
                ]),
                Err(RunError::Numerical(e)) => rows.push(vec![
                    label.to_string(),
                    g.to_string(),
                    format!("failed: {e}"),
                    format!("{ms:.1}"),
                ]),
                Err(other) => return Err(other),
            }
        }
    }
    write_rows(
        &["method", "grid_points", "max_rel_err", "wall_time_ms"],
        rows,
        &args.out,
    )
    .map_err(RunError::Config)
}

fn cmd_verify(
    suite: &str,
    format: &str,
    out: &Option<PathBuf>,
    seed: Option<u64>,
) -> Result<bool, RunError> {
    let suite = Suite::parse(suite)
        .ok_or_else(|| RunError::Config(format!("unknown suite '{suite}'")))?;
    let mut opts = RunOptions::default();
    if let Some(s) = seed {
        opts.seed = s;
    }
    let report = oracle::run_suite(suite, &opts);
    let body = match format {
        "csv" => report.to_csv(),
        "json" => report.to_json().map_err(|e| RunError::Config(e.to_string()))?,
        "text" => {
            let mut s = report.summary_lines().join("\n");
            s.push('\n');
            s.push_str(&format!(
                "{}: {} cases, {} failed\n",
                report.suite,
                report.results.len(),
                report.results.iter().filter(|r| !r.pass).count()
            ));
            s
        }
        other => return Err(RunError::Config(format!("unknown format '{other}'"))),
    };
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| RunError::Config(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(report.has_failures())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Forward(args) => cmd_forward(args),
        Command::Dual(args) => cmd_dual(args),
        Command::InvertMean(args) => cmd_invert(args, true),
        Command::InvertBl(args) => cmd_invert(args, false),
        Command::Table(args) => cmd_table(args),
        Command::Verify {
            suite,
            format,
            out,
            seed,
        } => {
            return match cmd_verify(suite, format, out, *seed) {
                Ok(false) => ExitCode::SUCCESS,
                Ok(true) => ExitCode::from(EXIT_VERIFY_FAIL),
                Err(RunError::Config(msg)) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(EXIT_CONFIG)
                }
                Err(RunError::Numerical(msg)) => {
                    eprintln!("numerical failure: {msg}");
                    ExitCode::from(EXIT_NUMERICAL)
                }
            };
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(RunError::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
