//! Command-line front end. [`run`] does the work and returns the exit code and
//! rendered output; the binary only parses arguments and writes the result.

use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::certificate::verify_counterexample;
use crate::fiber::FiberModel;
use crate::lift::{trajectory, CurveAssignment, DistinctCurves, LiftState, SharedCurve};
use crate::pl_map::{build_tf, MapSpec, PLMap};
use crate::rational::Rat;
use crate::stabilizer::{
    is_algebraically_stable, run_msa_with, MsaStatus, OrbitTrace, StabilityVerdict, TieBreak,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_UNSTABLE: i32 = 2;
pub const EXIT_BUDGET_EXHAUSTED: i32 = 3;

#[derive(Debug, Clone, Parser)]
#[command(name = "stabiliscope", version, about = "Stabilisation of Farey-indexed fiber dynamics")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Input JSON: a file path, `-` for stdin, or an inline document.
    #[arg(long, global = true)]
    pub input: Option<String>,

    /// Maximum number of MSA rounds.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,

    /// Number of iterations for `orbit` and `certify`.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub steps: Option<u64>,

    /// Orbit tie-break for `msa` (smallest-start, largest-start, random[:seed],
    /// any-minimal[:seed]) or curve policy for `lift-sim` (distinct, shared).
    #[arg(long, global = true)]
    pub strategy: Option<String>,

    /// Seed for randomized strategies given without an explicit seed.
    #[arg(long, global = true, env = "STABILISCOPE_SEED")]
    pub seed: Option<u64>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the induced piecewise-linear map.
    Tf,
    /// Print the exact orbit of a point.
    Orbit {
        #[arg(default_value = "1")]
        q0: String,
        #[arg(value_name = "STEPS")]
        count: Option<u64>,
    },
    /// Decide stability of a model/map pair.
    Analyze,
    /// Run the minimal stabilisation algorithm.
    Msa,
    /// Check the non-termination certificate for a fold map.
    Certify,
    /// Simulate repeated graph lifts.
    LiftSim,
    /// Export the fiber dual graph.
    ExportGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { exit_code: EXIT_OK, output }
    }
}

/// An input problem with the JSON path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "input error at `{}`: {}", self.path, self.message)
    }
}

fn input_err(path: &str, message: impl ToString) -> InputError {
    InputError { path: path.to_string(), message: message.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit: Option<OrbitTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MsaSummary {
    pub status: MsaStatus,
    pub rounds: usize,
    pub marked: Vec<Rat>,
}

pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(config) {
        Ok(outcome) => outcome,
        Err(e) => Outcome { exit_code: EXIT_INPUT_ERROR, output: format!("{e}\n") },
    }
}

fn dispatch(config: &RunConfig) -> Result<Outcome, InputError> {
    let format = |default: Format| config.format.unwrap_or(default);
    match &config.command {
        Command::Tf => {
            let (_, map) = load_problem(config)?;
            match format(Format::Json) {
                Format::Json => Ok(Outcome::ok(to_json_line(&map))),
                Format::Text => Ok(Outcome::ok(render_map(&map))),
                Format::Dot => Err(unsupported("tf", Format::Dot)),
            }
        }
        Command::Orbit { q0, count } => {
            let (_, map) = load_problem(config)?;
            let q0: Rat = q0.parse().map_err(|e| input_err("q0", e))?;
            let steps = count
                .or(config.steps)
                .ok_or_else(|| input_err("steps", "orbit needs a step count"))?;
            let orbit = map.orbit(&q0, steps as usize).map_err(|e| input_err("q0", e))?;
            match format(Format::Text) {
                Format::Json => Ok(Outcome::ok(to_json_line(&orbit))),
                Format::Text => Ok(Outcome::ok(format!("{}\n", join(&orbit)))),
                Format::Dot => Err(unsupported("orbit", Format::Dot)),
            }
        }
        Command::Analyze => {
            let (model, map) = load_problem(config)?;
            let verdict = is_algebraically_stable(&model, &map);
            let report = match &verdict {
                StabilityVerdict::Stable => AnalyzeReport { verdict: "stable".into(), orbit: None },
                StabilityVerdict::Unstable(o) => {
                    AnalyzeReport { verdict: "unstable".into(), orbit: Some(o.trace(&model)) }
                }
            };
            let output = match format(Format::Json) {
                Format::Json => to_json_line(&report),
                Format::Text => render_report(&report),
                Format::Dot => return Err(unsupported("analyze", Format::Dot)),
            };
            let exit_code = if verdict.is_stable() { EXIT_OK } else { EXIT_UNSTABLE };
            Ok(Outcome { exit_code, output })
        }
        Command::Msa => {
            let (model, map) = load_problem(config)?;
            let tie = tie_break(config)?;
            let budget = config.budget.unwrap_or(100) as usize;
            let run = run_msa_with(&model, &map, budget, tie);
            let summary = MsaSummary {
                status: run.status,
                rounds: run.rounds_used(),
                marked: run.model.marked().to_vec(),
            };
            let mut out = String::new();
            match format(Format::Json) {
                Format::Json => {
                    for round in &run.rounds {
                        out.push_str(&to_json_line(round));
                    }
                    out.push_str(&to_json_line(&summary));
                }
                Format::Text => {
                    for round in &run.rounds {
                        let _ = writeln!(
                            out,
                            "round {}: orbit from E_{} of length {}; inserted {}",
                            round.round,
                            round.orbit.start,
                            round.orbit.length,
                            join(&round.inserted)
                        );
                    }
                    let status = match summary.status {
                        MsaStatus::Terminated => "terminated",
                        MsaStatus::BudgetExhausted => "budget exhausted",
                    };
                    let _ = writeln!(out, "{status} after {} rounds", summary.rounds);
                    let _ = writeln!(out, "marked: {}", join(&summary.marked));
                }
                Format::Dot => return Err(unsupported("msa", Format::Dot)),
            }
            let exit_code = if run.terminated() { EXIT_OK } else { EXIT_BUDGET_EXHAUSTED };
            Ok(Outcome { exit_code, output: out })
        }
        Command::Certify => {
            let (_, map) = load_problem(config)?;
            let cert = verify_counterexample(&map, config.steps.unwrap_or(50) as usize);
            match format(Format::Json) {
                Format::Json => Ok(Outcome::ok(to_json_line(&cert))),
                Format::Text => {
                    let mut out = String::new();
                    let _ = writeln!(out, "valid: {}", cert.is_valid());
                    let _ = writeln!(out, "slopes_ok: {}", cert.slopes_ok);
                    let _ = writeln!(out, "fold_ok: {}", cert.fold_ok);
                    let _ = writeln!(out, "denominators_doubling: {}", cert.denominators_doubling);
                    let _ = writeln!(out, "steps_checked: {}", cert.steps_checked);
                    Ok(Outcome::ok(out))
                }
                Format::Dot => Err(unsupported("certify", Format::Dot)),
            }
        }
        Command::LiftSim => {
            let doc = read_input(config)?;
            let state: LiftState = parse_at(doc, "")?;
            let policy: &dyn CurveAssignment = match config.strategy.as_deref() {
                None | Some("distinct") => &DistinctCurves,
                Some("shared") => &SharedCurve,
                Some(other) => {
                    return Err(input_err("strategy", format!("unknown lift policy {other:?}")))
                }
            };
            let states = trajectory(&state, policy);
            match format(Format::Text) {
                Format::Json => Ok(Outcome::ok(to_json_line(&states))),
                Format::Text => Ok(Outcome::ok(render_trajectory(&states))),
                Format::Dot => Err(unsupported("lift-sim", Format::Dot)),
            }
        }
        Command::ExportGraph => {
            let doc = read_input(config)?;
            let model = match (&doc, config.budget) {
                (Value::Object(obj), Some(budget)) if obj.contains_key("map") => {
                    let (model, map) = problem_from(doc)?;
                    run_msa_with(&model, &map, budget as usize, tie_break(config)?).model
                }
                (Value::Object(obj), _) if obj.contains_key("marked") => parse_model(&doc)?,
                _ => return Err(input_err("marked", "expected a fiber model")),
            };
            match format(Format::Dot) {
                Format::Dot => Ok(Outcome::ok(model.to_dot())),
                Format::Json => Ok(Outcome::ok(to_json_line(&model))),
                Format::Text => Ok(Outcome::ok(format!("{}\n", join(model.marked())))),
            }
        }
    }
}

fn unsupported(command: &str, format: Format) -> InputError {
    input_err("format", format!("{command} does not support {format:?} output"))
}

fn tie_break(config: &RunConfig) -> Result<TieBreak, InputError> {
    let Some(name) = config.strategy.as_deref() else {
        return Ok(TieBreak::SmallestStart);
    };
    let tie: TieBreak = name.parse().map_err(|e| input_err("strategy", e))?;
    // an explicit seed in the name wins over STABILISCOPE_SEED
    Ok(match (tie, name.contains(':'), config.seed) {
        (TieBreak::RandomShortest { .. }, false, Some(seed)) => TieBreak::RandomShortest { seed },
        (TieBreak::AnyMinimal { .. }, false, Some(seed)) => TieBreak::AnyMinimal { seed },
        (tie, _, _) => tie,
    })
}

fn read_input(config: &RunConfig) -> Result<Value, InputError> {
    let src = config.input.as_deref().ok_or_else(|| input_err("input", "no --input given"))?;
    let text = if src.trim_start().starts_with('{') || src.trim_start().starts_with('[') {
        src.to_string()
    } else if src == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| input_err("input", e))?;
        buf
    } else {
        fs::read_to_string(src).map_err(|e| input_err("input", format!("{src}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| input_err("input", e))
}

fn parse_at<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T, InputError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = match (prefix.is_empty(), inner.as_str()) {
            (true, ".") => ".".to_string(),
            (true, _) => inner,
            (false, ".") => prefix.to_string(),
            (false, _) => format!("{prefix}.{inner}"),
        };
        input_err(&path, e.into_inner())
    })
}

/// A map document is either exponent data (`n`, `monomials`) or explicit
/// pieces (`breakpoints`, `pieces`).
fn parse_map(value: Value, path: &str) -> Result<PLMap, InputError> {
    let Value::Object(obj) = &value else {
        return Err(input_err(path, "expected a map object"));
    };
    if obj.contains_key("n") || obj.contains_key("monomials") {
        let spec: MapSpec = parse_at(value, path)?;
        build_tf(&spec).map_err(|e| input_err(path, e))
    } else if obj.contains_key("breakpoints") || obj.contains_key("pieces") {
        parse_at(value, path)
    } else {
        Err(input_err(path, "expected {n, monomials} or {breakpoints, pieces}"))
    }
}

/// Parses a map document in either accepted shape.
pub fn map_from_json(text: &str) -> Result<PLMap, InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| input_err(".", e))?;
    parse_map(value, ".")
}

fn parse_model(value: &Value) -> Result<FiberModel, InputError> {
    let marked = value.get("marked").cloned().unwrap_or(Value::Null);
    let wrapped = serde_json::json!({ "marked": marked });
    parse_at(wrapped, "").map_err(|e| InputError {
        path: if e.path == "." { "marked".into() } else { e.path },
        message: e.message,
    })
}

/// `{"marked": [...], "map": {...}}`, or a bare map over `{0, 1}`.
fn problem_from(doc: Value) -> Result<(FiberModel, PLMap), InputError> {
    match &doc {
        Value::Object(obj) if obj.contains_key("map") => {
            let model =
                if obj.contains_key("marked") { parse_model(&doc)? } else { FiberModel::unit() };
            let map = parse_map(obj["map"].clone(), "map")?;
            Ok((model, map))
        }
        _ => Ok((FiberModel::unit(), parse_map(doc, ".")?)),
    }
}

fn load_problem(config: &RunConfig) -> Result<(FiberModel, PLMap), InputError> {
    problem_from(read_input(config)?)
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

fn join(values: &[Rat]) -> String {
    values.iter().map(Rat::to_string).collect::<Vec<_>>().join(" ")
}

fn render_map(map: &PLMap) -> String {
    let mut out = String::new();
    for (w, p) in map.breakpoints().windows(2).zip(map.pieces()) {
        let _ = writeln!(out, "[{}, {}]: {}·q + {}", w[0], w[1], p.slope, p.intercept);
    }
    out
}

fn render_report(report: &AnalyzeReport) -> String {
    match &report.orbit {
        None => "stable\n".into(),
        Some(o) => {
            let points: Vec<String> =
                o.points.iter().map(|g| format!("({}, {})", g.gap_lo, g.gap_hi)).collect();
            format!(
                "unstable: E_{} -> {} -> E_{{{}}} (length {})\n",
                o.start,
                points.join(" -> "),
                join(&o.inverse),
                o.length
            )
        }
    }
}

fn render_trajectory(states: &[LiftState]) -> String {
    let mut out = format!("{:>4}  {:>5}  {:>4}  lengths\n", "lift", "comp", "l1");
    for (i, s) in states.iter().enumerate() {
        let lengths: Vec<String> = s.lengths().iter().map(u64::to_string).collect();
        let _ = writeln!(
            out,
            "{:>4}  {:>5}  {:>4}  {{{}}}",
            i,
            s.comp(),
            s.length1_curves(),
            lengths.join(", ")
        );
    }
    out
}
