use std::fs;

use serde::Serialize;

use purify_core::applications::{
    default_eps, mixedness_class_report, mixedness_levels, simon_trials, MixednessClassReport,
    SimonSummary,
};
use purify_core::dense::oracle_sweep;
use purify_core::gadget::region_boundary;
use purify_core::recurrence::{
    expected_sample_complexity, i_star, iterate, iterations_to, lower_bound_samples,
    n_upper_finite_d, n_upper_inf, optimal_samples_asymptotic, sc_theorem_bound,
    tomography_sample_estimate, ScBranch, TOMOGRAPHY_CONSTANT,
};
use purify_core::streaming::{simulate_runs, MachineOptions, McSummary};
use purify_core::{Dimension, Error, Seed};

use crate::cli::{
    BoundsArgs, Format, MixednessArgs, MixednessCase, RecurrenceArgs, RegionArgs, SimonArgs,
    SimulateArgs, VerifyArgs,
};
use crate::output::{self, na, opt, Meta, TextTable};

/// How a command that produced output finished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ToleranceFailure,
    BudgetExhausted,
}

pub struct Outcome {
    pub body: String,
    pub status: Status,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self {
            body,
            status: Status::Ok,
        }
    }
}

/// A command that could not produce output.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Budget(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Budget(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn pick(
    format: Option<Format>,
    default: Format,
    allowed: &[Format],
    command: &str,
) -> Result<Format, Failure> {
    let f = format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::Usage(
            format!("{command} does not support --format {f:?}").to_lowercase(),
        ))
    }
}

fn finite(dim: Dimension, command: &str) -> Result<u64, Failure> {
    match dim {
        Dimension::Finite(d) => Ok(d),
        Dimension::Infinite => Err(Failure::Usage(format!(
            "{command} simulates explicit states and needs a finite dimension, not `inf`"
        ))),
    }
}

#[derive(Serialize)]
struct Curve {
    d: Dimension,
    /// Smallest `i` with `δ_{i+1} < 2/3`; absent when `δ_0 ≤ 2/3`.
    i_star: Option<usize>,
    rows: Vec<CurveRow>,
}

#[derive(Serialize)]
struct CurveRow {
    i: usize,
    delta: f64,
    p: Option<f64>,
}

pub fn recurrence(args: &RecurrenceArgs, format: Option<Format>, seed: u64) -> CmdResult {
    let format = pick(
        format,
        Format::Csv,
        &[Format::Csv, Format::Json],
        "recurrence",
    )?;
    let mut curves = Vec::new();
    for &dim in &args.dims {
        let trace = iterate(args.delta0, dim, args.iters)?;
        let i_star = if args.delta0 > 2.0 / 3.0 {
            Some(i_star(args.delta0, dim)?)
        } else {
            None
        };
        curves.push(Curve {
            d: dim,
            i_star,
            rows: trace
                .entries
                .iter()
                .map(|e| CurveRow {
                    i: e.i,
                    delta: e.delta,
                    p: e.p,
                })
                .collect(),
        });
    }
    let meta = Meta::new("recurrence", seed, args);
    Ok(Outcome::ok(match format {
        Format::Json => output::json(&meta, &serde_json::json!({ "curves": curves })),
        _ => {
            let rows: Vec<Vec<String>> = curves
                .iter()
                .flat_map(|c| {
                    c.rows.iter().map(move |r| {
                        vec![
                            c.d.to_string(),
                            r.i.to_string(),
                            r.delta.to_string(),
                            opt(r.p),
                        ]
                    })
                })
                .collect();
            output::csv(&meta, &["d", "i", "delta_i", "p_i"], &rows)
        }
    }))
}

#[derive(Serialize)]
struct BoundsReport {
    n_direct: usize,
    delta_n: f64,
    n_upper_inf: Option<usize>,
    n_upper_finite_d: Option<usize>,
    sc_exact: Option<f64>,
    sc_theorem_bound: Option<f64>,
    sc_branch: ScBranch,
    lower_bound: Option<f64>,
    optimal_copies: Option<f64>,
    tomography_collective: Option<f64>,
    tomography_single_copy: Option<f64>,
    tomography_constant: f64,
}

pub fn bounds(args: &BoundsArgs, format: Option<Format>, seed: u64) -> CmdResult {
    let format = pick(
        format,
        Format::Text,
        &[Format::Text, Format::Json],
        "bounds",
    )?;
    let n = iterations_to(args.delta0, args.dim, args.eps)?;
    let delta_n = iterate(args.delta0, args.dim, n)?.final_delta();
    let high = args.delta0 > 2.0 / 3.0;
    let d = match args.dim {
        Dimension::Finite(d) => Some(d),
        Dimension::Infinite => None,
    };
    let report = BoundsReport {
        n_direct: n,
        delta_n,
        n_upper_inf: if high {
            Some(n_upper_inf(args.delta0)?)
        } else {
            None
        },
        n_upper_finite_d: match d {
            Some(d) if high => Some(n_upper_finite_d(args.delta0, d)?),
            _ => None,
        },
        sc_exact: d
            .map(|_| expected_sample_complexity(args.delta0, args.dim, n))
            .transpose()?,
        sc_theorem_bound: d
            .map(|d| sc_theorem_bound(args.delta0, d, args.eps))
            .transpose()?,
        sc_branch: ScBranch::of(args.delta0),
        lower_bound: d
            .map(|d| lower_bound_samples(args.delta0, d, args.eps))
            .transpose()?,
        optimal_copies: d
            .map(|d| optimal_samples_asymptotic(args.delta0, d, args.eps))
            .transpose()?,
        tomography_collective: d
            .map(|d| tomography_sample_estimate(d, args.delta0, args.eps, true))
            .transpose()?,
        tomography_single_copy: d
            .map(|d| tomography_sample_estimate(d, args.delta0, args.eps, false))
            .transpose()?,
        tomography_constant: TOMOGRAPHY_CONSTANT,
    };
    let meta = Meta::new("bounds", seed, args);
    Ok(Outcome::ok(match format {
        Format::Json => output::json(&meta, &report),
        _ => {
            let mut t = TextTable::new(format!(
                "bounds: d = {}, delta0 = {}, eps = {}",
                args.dim, args.delta0, args.eps
            ));
            t.row("levels to reach eps", report.n_direct)
                .row("delta after those levels", report.delta_n)
                .row("levels below 2/3, d = inf bound", na(report.n_upper_inf))
                .row(
                    "levels below 2/3, finite-d bound",
                    na(report.n_upper_finite_d),
                )
                .row("expected copies (exact)", na(report.sc_exact))
                .row(
                    format!("theorem bound ({:?})", report.sc_branch),
                    na(report.sc_theorem_bound),
                )
                .row("lower bound, any purifier", na(report.lower_bound))
                .row("optimal protocol copies", na(report.optimal_copies))
                .row("tomography, collective", na(report.tomography_collective))
                .row("tomography, single-copy", na(report.tomography_single_copy))
                .row("tomography constant", report.tomography_constant);
            format!("{}{}", text_preamble(&meta), t)
        }
    }))
}

fn text_preamble<C: Serialize>(meta: &Meta<'_, C>) -> String {
    meta.csv_preamble()
}

#[derive(Serialize)]
struct RegionRow {
    d: Dimension,
    delta1: f64,
    delta2_boundary: f64,
}

pub fn region(args: &RegionArgs, format: Option<Format>, seed: u64) -> CmdResult {
    let format = pick(format, Format::Csv, &[Format::Csv, Format::Json], "region")?;
    if args.resolution < 2 {
        return Err(Failure::Usage("--resolution must be at least 2".into()));
    }
    let mut rows = Vec::new();
    for &dim in &args.dims {
        for i in 1..args.resolution {
            let delta1 = i as f64 / args.resolution as f64;
            rows.push(RegionRow {
                d: dim,
                delta1,
                delta2_boundary: region_boundary(delta1, dim)?,
            });
        }
    }
    let meta = Meta::new("region", seed, args);
    Ok(Outcome::ok(match format {
        Format::Json => output::json(&meta, &serde_json::json!({ "rows": rows })),
        _ => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.d.to_string(),
                        r.delta1.to_string(),
                        r.delta2_boundary.to_string(),
                    ]
                })
                .collect();
            output::csv(&meta, &["d", "delta1", "delta2_boundary"], &rows)
        }
    }))
}

#[derive(Serialize)]
struct SimulateReport {
    summary: McSummary,
    expected_copies: f64,
    z_score: f64,
    depth_bound: usize,
    mean_gate_count: f64,
}

pub fn simulate(args: &SimulateArgs, format: Option<Format>, seed: u64) -> CmdResult {
    pick(format, Format::Json, &[Format::Json], "simulate")?;
    let d = finite(args.dim, "simulate")?;
    if args.runs == 0 {
        return Err(Failure::Usage("--runs must be at least 1".into()));
    }
    let runs = simulate_runs(
        args.delta0,
        d,
        args.levels,
        args.runs,
        Seed::new(seed, 0),
        MachineOptions::default(),
    )?;
    let summary = McSummary::from_runs(&runs)?;
    let expected = expected_sample_complexity(args.delta0, args.dim, args.levels)?;
    let z = if summary.std_error > 0.0 {
        (summary.mean_copies - expected) / summary.std_error
    } else {
        0.0
    };
    let gates: u128 = runs.iter().map(|r| u128::from(r.gate_count)).sum();
    let meta = Meta::new("simulate", seed, args);

    if let Some(path) = &args.per_run {
        let rows: Vec<Vec<String>> = runs
            .iter()
            .enumerate()
            .map(|(i, r)| {
                vec![
                    i.to_string(),
                    r.copies_consumed.to_string(),
                    r.swap_attempts.to_string(),
                    r.max_stack_depth.to_string(),
                    r.gate_count.to_string(),
                ]
            })
            .collect();
        let text = output::csv(
            &meta,
            &[
                "run",
                "copies_consumed",
                "swap_attempts",
                "max_stack_depth",
                "gate_count",
            ],
            &rows,
        );
        fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }

    let report = SimulateReport {
        expected_copies: expected,
        z_score: z,
        depth_bound: args.levels + 1,
        mean_gate_count: gates as f64 / args.runs as f64,
        summary,
    };
    Ok(Outcome::ok(output::json(&meta, &report)))
}

pub fn verify(args: &VerifyArgs, format: Option<Format>, seed: u64) -> CmdResult {
    let format = pick(
        format,
        Format::Text,
        &[Format::Text, Format::Json],
        "verify",
    )?;
    let d = finite(args.dim, "verify")? as usize;
    let report = oracle_sweep(d, args.trials, Seed::new(seed, d as u64))?;
    let status = if report.passed() {
        Status::Ok
    } else {
        Status::ToleranceFailure
    };
    let meta = Meta::new("verify", seed, args);
    let body = match format {
        Format::Json => output::json(&meta, &report),
        _ => {
            let mut t = TextTable::new(format!(
                "verify: d = {}, {} trials: {}",
                report.d,
                report.trials,
                if report.passed() { "PASS" } else { "FAIL" }
            ));
            t.row("tolerance", format!("{:e}", report.tolerance))
                .row(
                    "max |p0 - closed form|",
                    format!("{:e}", report.max_prob_error),
                )
                .row(
                    "max trace distance",
                    format!("{:e}", report.max_state_error),
                )
                .row(
                    "max |p0 + p1 - 1|",
                    format!("{:e}", report.max_completeness_error),
                )
                .row(
                    "max basis dependence",
                    format!("{:e}", report.max_basis_error),
                )
                .row("failing trials", report.failures);
            format!("{}{}", text_preamble(&meta), t)
        }
    };
    Ok(Outcome { body, status })
}

pub fn simon(args: &SimonArgs, format: Option<Format>, seed: u64) -> CmdResult {
    let format = pick(format, Format::Json, &[Format::Json, Format::Csv], "simon")?;
    if args.m.is_empty() {
        return Err(Failure::Usage("--m needs at least one value".into()));
    }
    let mut table: Vec<SimonSummary> = Vec::new();
    for &m in &args.m {
        let eps = args.eps.unwrap_or_else(|| default_eps(m));
        table.push(simon_trials(
            m,
            args.delta,
            eps,
            args.trials,
            args.budget,
            Seed::new(seed, m as u64),
        )?);
    }
    let status = if table.iter().any(|s| s.exhausted > 0) {
        Status::BudgetExhausted
    } else {
        Status::Ok
    };
    let meta = Meta::new("simon", seed, args);
    let body = match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = table
                .iter()
                .map(|s| {
                    vec![
                        s.m.to_string(),
                        s.eps.to_string(),
                        s.levels.to_string(),
                        s.trials.to_string(),
                        s.success_rate.to_string(),
                        s.exhausted.to_string(),
                        s.mean_queries.to_string(),
                        s.mean_samples.to_string(),
                        s.queries_per_m2.to_string(),
                    ]
                })
                .collect();
            output::csv(
                &meta,
                &[
                    "m",
                    "eps",
                    "levels",
                    "trials",
                    "success_rate",
                    "exhausted",
                    "mean_queries",
                    "mean_samples",
                    "queries_per_m2",
                ],
                &rows,
            )
        }
        _ => {
            let ms: Vec<f64> = table.iter().map(|s| (s.m * s.m) as f64).collect();
            let fitted_c = table
                .iter()
                .zip(&ms)
                .map(|(s, m2)| s.mean_queries * m2)
                .sum::<f64>()
                / ms.iter().map(|m2| m2 * m2).sum::<f64>();
            output::json(
                &meta,
                &serde_json::json!({ "table": table, "fitted_c_m2": fitted_c }),
            )
        }
    };
    Ok(Outcome { body, status })
}

pub fn mixedness(args: &MixednessArgs, format: Option<Format>, seed: u64) -> CmdResult {
    pick(format, Format::Json, &[Format::Json], "mixedness")?;
    let d = finite(args.dim, "mixedness")?;
    let levels = mixedness_levels(args.eta)?;
    let mut classes: Vec<(u64, f64)> = Vec::new();
    if args.case != MixednessCase::Far {
        classes.push((0, 1.0));
    }
    if args.case != MixednessCase::Mixed {
        classes.push((1, args.far_delta));
    }
    let reports: Vec<MixednessClassReport> = classes
        .iter()
        .map(|&(stream, delta)| {
            mixedness_class_report(
                delta,
                d,
                args.eta,
                args.reps,
                args.trials,
                Seed::new(seed, stream),
                args.tau,
            )
        })
        .collect::<Result<_, _>>()?;
    let meta = Meta::new("mixedness", seed, args);
    Ok(Outcome::ok(output::json(
        &meta,
        &serde_json::json!({ "levels": levels, "classes": reports }),
    )))
}
