//! Closed-form oracle corpus, verification suites, and report
//! generation.
//!
//! Each [`OracleCase`] computes a value and an independent reference and
//! passes when they agree within its tolerance. Suites run cases in
//! parallel (capped by the `HOROXFORM_WORKERS` environment variable) and
//! produce deterministic CSV or JSON reports given a fixed seed.

pub mod corpus;
mod suites;

use crate::error::Result;
use serde::Serialize;
use std::time::Instant;

pub use corpus::{oracle_dual_pairs, oracle_hf_power, standard_field, DualPairVariant, FieldKind};

type CaseFn = Box<dyn Fn(&RunOptions) -> Result<(f64, f64)> + Send + Sync>;

/// One verification case: a computation, an independent reference, and
/// a tolerance on their relative gap.
pub struct OracleCase {
    pub id: String,
    /// Human-readable description of the identity being checked.
    pub detail: String,
    pub tolerance: f64,
    compute: CaseFn,
}

impl OracleCase {
    pub fn new<F>(id: &str, detail: &str, tolerance: f64, compute: F) -> Self
    where
        F: Fn(&RunOptions) -> Result<(f64, f64)> + Send + Sync + 'static,
    {
        assert!(tolerance >= 0.0, "tolerance must be nonnegative");
        OracleCase {
            id: id.to_string(),
            detail: detail.to_string(),
            tolerance,
            compute: Box::new(compute),
        }
    }

    pub fn run(&self, opts: &RunOptions) -> CaseResult {
        let t0 = Instant::now();
        let outcome = (self.compute)(opts);
        let wall_time_ms = t0.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok((computed, reference)) => {
                let abs_err = (computed - reference).abs();
                let rel_err = if reference.abs() > 0.0 {
                    abs_err / reference.abs()
                } else {
                    abs_err
                };
                CaseResult {
                    id: self.id.clone(),
                    detail: self.detail.clone(),
                    computed,
                    reference,
                    abs_err,
                    rel_err,
                    tolerance: self.tolerance,
                    pass: rel_err <= self.tolerance,
                    wall_time_ms,
                    error: None,
                }
            }
            Err(e) => CaseResult {
                id: self.id.clone(),
                detail: self.detail.clone(),
                computed: f64::NAN,
                reference: f64::NAN,
                abs_err: f64::NAN,
                rel_err: f64::NAN,
                tolerance: self.tolerance,
                pass: false,
                wall_time_ms,
                error: Some(e.to_string()),
            },
        }
    }
}

/// Options shared by every case of a run.
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Seed for the randomized property cases.
    pub seed: u64,
    /// Worker cap; `None` reads `HOROXFORM_WORKERS` or uses the rayon
    /// default.
    pub workers: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0x4852_5442,
            workers: None,
        }
    }
}

/// Result row of one case.
#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub detail: String,
    pub computed: f64,
    pub reference: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub wall_time_ms: f64,
    pub error: Option<String>,
}

/// Report of a suite run.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub schema_version: u32,
    pub seed: u64,
    pub results: Vec<CaseResult>,
}

/// RFC-4180-style field quoting.
fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

impl Report {
    pub fn has_failures(&self) -> bool {
        self.results.iter().any(|r| !r.pass)
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("id,computed,reference,abs_err,rel_err,tol,status,wall_time_ms\n");
        for r in &self.results {
            out.push_str(&format!(
                "{},{:.12e},{:.12e},{:.3e},{:.3e},{:.1e},{},{:.1}\n",
                csv_quote(&r.id),
                r.computed,
                r.reference,
                r.abs_err,
                r.rel_err,
                r.tolerance,
                if r.pass { "PASS" } else { "FAIL" },
                r.wall_time_ms
            ));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One `id: PASS/FAIL` line per case, for terminal display.
    pub fn summary_lines(&self) -> Vec<String> {
        self.results
            .iter()
            .map(|r| {
                let status = if r.pass { "PASS" } else { "FAIL" };
                match &r.error {
                    Some(e) => format!("{:<44} {status}  ({e})", r.id),
                    None => format!(
                        "{:<44} {status}  rel_err {:.2e} (tol {:.1e}, {:.0} ms)",
                        r.id, r.rel_err, r.tolerance, r.wall_time_ms
                    ),
                }
            })
            .collect()
    }
}

/// Named suites, tiered so the cheap ones run in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Geometry,
    Fractional,
    Harmonic,
    Transform,
    Duality,
    Inversion,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Fractional => "fractional",
            Suite::Harmonic => "harmonic",
            Suite::Transform => "transform",
            Suite::Duality => "duality",
            Suite::Inversion => "inversion",
            Suite::All => "all",
        }
    }

    pub fn parse(name: &str) -> Option<Suite> {
        Some(match name {
            "geometry" => Suite::Geometry,
            "fractional" => Suite::Fractional,
            "harmonic" => Suite::Harmonic,
            "transform" => Suite::Transform,
            "duality" => Suite::Duality,
            "inversion" => Suite::Inversion,
            "all" => Suite::All,
            _ => return None,
        })
    }

    fn cases(&self) -> Vec<OracleCase> {
        match self {
            Suite::Geometry => suites::geometry_cases(),
            Suite::Fractional => suites::fractional_cases(),
            Suite::Harmonic => suites::harmonic_cases(),
            Suite::Transform => suites::transform_cases(),
            Suite::Duality => suites::duality_cases(),
            Suite::Inversion => suites::inversion_cases(),
            Suite::All => {
                let mut all = suites::geometry_cases();
                all.extend(suites::fractional_cases());
                all.extend(suites::harmonic_cases());
                all.extend(suites::transform_cases());
                all.extend(suites::duality_cases());
                all.extend(suites::inversion_cases());
                all
            }
        }
    }
}

fn worker_count(opts: &RunOptions) -> Option<usize> {
    opts.workers.or_else(|| {
        std::env::var("HOROXFORM_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

/// Run an explicit list of cases (the `Suite` machinery and custom
/// corpora both land here). Case order in the report matches the input
/// regardless of scheduling.
pub fn run_cases(suite_name: &str, cases: Vec<OracleCase>, opts: &RunOptions) -> Report {
    use rayon::prelude::*;
    let run = || -> Vec<CaseResult> {
        cases.par_iter().map(|c| c.run(opts)).collect()
    };
    let results = match worker_count(opts) {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    };
    Report {
        suite: suite_name.to_string(),
        schema_version: 1,
        seed: opts.seed,
        results,
    }
}

/// Run a named suite.
pub fn run_suite(suite: Suite, opts: &RunOptions) -> Report {
    run_cases(suite.name(), suite.cases(), opts)
}
