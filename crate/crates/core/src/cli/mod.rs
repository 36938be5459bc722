//! Command-line front end: problem files in, canonical JSON out.

mod checks;

pub use checks::{example_checks, Check};

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::arith::{format_rational, format_vec, parse_rational, Int, Rat};
use crate::error::{Error, Result};
use crate::formulas::{
    dim_log_free, exceptional_sweep, is_cohen_macaulay, is_exceptional, rank_simplex, CmOutcome,
    DimensionBreakdown, SweepOptions,
};
use crate::geometry::{
    cone_faces, is_simplex, normalized_volume, regular_triangulation, Configuration, Face, Weight,
};
use crate::oracle::{oracle_e_tau, oracle_lower_hull, oracle_series};
use crate::params::{e_tau_with, fingerprint, minface, Budget};
use crate::series::{minex, phi_series, verify_annihilation};

#[derive(Debug, Parser)]
#[command(
    name = "gkz",
    version,
    about = "Exact computations for A-hypergeometric systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// node limit for every bounded search
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// truncation order for series, as a rational weight
    #[arg(long, global = true)]
    pub order: Option<String>,

    /// degree window LO:HI for sweeps
    #[arg(long, global = true)]
    pub window: Option<String>,

    /// cross-check the result against the reference implementations
    #[arg(long, global = true)]
    pub verify: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// regular triangulation for the weight `w`
    Triangulate(Input),
    /// faces of the cone over the configuration
    Faces(Input),
    /// the sets E_τ(β) for every cone face, and minface(β)
    Etau(Input),
    /// dimension of the logarithm-free series solutions for the weight `w`
    Dim(Input),
    /// rank in the simplex case
    Rank(Input),
    /// whether β is an exceptional parameter (simplex case)
    Exceptional(Input),
    /// exceptional parameters in a degree window (simplex case)
    Sweep(Input),
    /// Cohen–Macaulay test for the semigroup ring (simplex case)
    Cm(Input),
    /// truncated logarithm-free series solutions for the weight `w`
    Series(Input),
    /// compares the fingerprints of `beta` and `beta2`
    Iso(Input),
    /// reruns the worked examples and reports each check
    Verify,
}

#[derive(Debug, Clone, PartialEq, Eq, clap::Args)]
pub struct Input {
    /// problem file; standard input when omitted
    #[arg(value_name = "FILE")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<(i64, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(rename = "A")]
    pub a: Vec<Vec<Value>>,
    #[serde(default)]
    pub beta: Option<Vec<Value>>,
    #[serde(default)]
    pub beta2: Option<Vec<Value>>,
    #[serde(default)]
    pub w: Option<Vec<Value>>,
    #[serde(default)]
    pub options: Option<Options>,
}

/// A parsed and validated problem.
#[derive(Debug, Clone)]
pub struct Problem {
    pub cfg: Configuration,
    pub beta: Option<Vec<Rat>>,
    pub beta2: Option<Vec<Rat>>,
    pub w: Option<Vec<Rat>>,
    pub options: Options,
}

fn rational_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => {
            Ok(Rat::from_integer(Int::from(n.as_i64().expect("checked"))))
        }
        other => Err(Error::Parse(format!(
            "expected a rational string, found {other}"
        ))),
    }
}

fn rational_list(v: &[Value]) -> Result<Vec<Rat>> {
    v.iter().map(rational_value).collect()
}

fn integer_value(v: &Value) -> Result<Int> {
    let q = rational_value(v)?;
    if !q.is_integer() {
        return Err(Error::Parse(format!("matrix entry {v} is not an integer")));
    }
    Ok(q.to_integer())
}

pub fn parse_problem(text: &str) -> Result<Problem> {
    let raw: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rows: Vec<Vec<Int>> = raw
        .a
        .iter()
        .map(|r| r.iter().map(integer_value).collect())
        .collect::<Result<_>>()?;
    let cfg = Configuration::new(crate::lattice::IntMatrix::new(rows)?)?;
    let parse_opt = |v: &Option<Vec<Value>>, len: usize| -> Result<Option<Vec<Rat>>> {
        match v {
            None => Ok(None),
            Some(list) => {
                let q = rational_list(list)?;
                if q.len() != len {
                    return Err(Error::DimensionMismatch {
                        expected: len,
                        found: q.len(),
                    });
                }
                Ok(Some(q))
            }
        }
    };
    Ok(Problem {
        beta: parse_opt(&raw.beta, cfg.dim())?,
        beta2: parse_opt(&raw.beta2, cfg.dim())?,
        w: parse_opt(&raw.w, cfg.len())?,
        options: raw.options.unwrap_or_default(),
        cfg,
    })
}

/// Settings after merging command-line flags over the problem's options.
#[derive(Debug, Clone)]
pub struct Settings {
    pub budget: Budget,
    pub order: Rat,
    pub window: (i64, i64),
    pub margin: i64,
    pub radius: u32,
    pub verify: bool,
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("window must look like LO:HI, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn settings(cli: &Cli, options: &Options) -> Result<Settings> {
    let mut budget = Budget::default();
    if let Some(n) = options.nodes {
        budget.nodes = n;
    }
    if let Some(d) = options.degree {
        budget.degree = d;
    }
    if let Some(n) = cli.budget {
        budget.nodes = n;
    }
    let order = match (&cli.order, &options.order) {
        (Some(s), _) => parse_rational(s)?,
        (None, Some(v)) => rational_value(v)?,
        (None, None) => Rat::from_integer(Int::from(10)),
    };
    let window = match &cli.window {
        Some(s) => parse_window(s)?,
        None => options.window.unwrap_or(SweepOptions::default().degrees),
    };
    Ok(Settings {
        budget,
        order,
        window,
        margin: options.margin.unwrap_or(SweepOptions::default().margin),
        radius: options.radius.unwrap_or(4),
        verify: cli.verify,
    })
}

fn int_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn ints_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

fn rats_json(v: &[Rat]) -> Value {
    json!(format_vec(v))
}

fn face_json(f: &Face) -> Value {
    json!({ "dim": f.span_dim, "members": f.members, "vertices": f.vertices })
}

fn breakdown_json(b: &DimensionBreakdown) -> Value {
    let contributions: Vec<Value> = b
        .contributions
        .iter()
        .map(|c| {
            json!({
                "face": c.face.vertices,
                "class": rats_json(&c.class),
                "volume": int_json(&c.volume),
                "value": int_json(&c.value),
                "term": c.render(),
            })
        })
        .collect();
    json!({ "formula": b.render(), "contributions": contributions })
}

fn need<'a, T>(v: &'a Option<T>, what: &str) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| Error::Parse(format!("this command needs \"{what}\" in the problem file")))
}

fn weight(p: &Problem) -> Result<Weight> {
    Ok(Weight::new(need(&p.w, "w")?.clone()))
}

fn input_echo(p: &Problem) -> Value {
    let mut m = Map::new();
    let rows: Vec<Value> = p
        .cfg
        .matrix()
        .row_vecs()
        .iter()
        .map(|r| ints_json(r))
        .collect();
    m.insert("A".into(), Value::Array(rows));
    if let Some(b) = &p.beta {
        m.insert("beta".into(), rats_json(b));
    }
    if let Some(b) = &p.beta2 {
        m.insert("beta2".into(), rats_json(b));
    }
    if let Some(w) = &p.w {
        m.insert("w".into(), rats_json(w));
    }
    let options = serde_json::to_value(&p.options).expect("options serialize");
    if options.as_object().is_some_and(|o| !o.is_empty()) {
        m.insert("options".into(), options);
    }
    Value::Object(m)
}

fn cm_json(o: &CmOutcome) -> Value {
    match o {
        CmOutcome::CohenMacaulay => json!({ "cohen_macaulay": true, "outcome": "CohenMacaulay" }),
        CmOutcome::NotCohenMacaulay { beta, m1, m2 } => json!({
            "cohen_macaulay": false,
            "outcome": "NotCohenMacaulay",
            "witness": { "beta": rats_json(beta), "m1": ints_json(m1), "m2": ints_json(m2) },
        }),
        CmOutcome::Inconclusive => json!({ "cohen_macaulay": null, "outcome": "Inconclusive" }),
    }
}

/// Runs one command on a parsed problem and returns the result block.
pub fn execute(command: &Command, p: &Problem, s: &Settings) -> Result<Value> {
    let cfg = &p.cfg;
    let budget = &s.budget;
    match command {
        Command::Triangulate(_) => {
            let w = weight(p)?;
            let t = regular_triangulation(cfg, &w)?;
            let mut volume = Int::from(0);
            let mut cells = Vec::new();
            for c in &t.cells {
                let v = normalized_volume(cfg, c)?;
                volume += &v;
                cells.push(
                    json!({ "vertices": c.vertices, "members": c.members, "volume": int_json(&v) }),
                );
            }
            let mut out = json!({
                "cells": cells,
                "volume": int_json(&volume),
                "unimodular": t.is_unimodular(cfg)?,
            });
            if s.verify {
                let cells: Vec<Vec<usize>> = t.cells.iter().map(|c| c.vertices.clone()).collect();
                out["verified"] = json!(oracle_lower_hull(cfg, &w)? == cells);
            }
            Ok(out)
        }
        Command::Faces(_) => {
            let faces: Vec<Value> = cone_faces(cfg).iter().map(face_json).collect();
            Ok(json!({ "faces": faces, "simplex": is_simplex(cfg) }))
        }
        Command::Etau(_) => {
            let beta = need(&p.beta, "beta")?;
            let mut faces = Vec::new();
            let mut verified = true;
            for f in cone_faces(cfg) {
                let e = e_tau_with(cfg, &f, beta, budget)?;
                let reps: Vec<Vec<Rat>> = e.iter().map(|c| c.rep.clone()).collect();
                if s.verify {
                    verified &= oracle_e_tau(cfg, &f, beta, 8) == reps;
                }
                faces.push(json!({
                    "face": face_json(&f),
                    "classes": reps.iter().map(|r| rats_json(r)).collect::<Vec<_>>(),
                }));
            }
            let mf: Vec<Value> = minface(cfg, beta, budget)?.iter().map(face_json).collect();
            let mut out = json!({ "faces": faces, "minface": mf });
            if s.verify {
                out["verified"] = json!(verified);
            }
            Ok(out)
        }
        Command::Dim(_) => {
            let beta = need(&p.beta, "beta")?;
            let t = regular_triangulation(cfg, &weight(p)?)?;
            let b = dim_log_free(cfg, &t, beta, budget)?;
            let ex = minex(cfg, &t, beta, budget)?;
            let exps: Vec<Value> = ex
                .iter()
                .map(|e| json!({ "v": rats_json(&e.v), "face": e.face.as_ref().map(|f| f.vertices.clone()) }))
                .collect();
            Ok(json!({
                "dimension": int_json(&b.total),
                "breakdown": breakdown_json(&b),
                "exponents": exps,
            }))
        }
        Command::Rank(_) => {
            let beta = need(&p.beta, "beta")?;
            let r = rank_simplex(cfg, beta, budget)?;
            let e = is_exceptional(cfg, beta, budget)?;
            Ok(json!({
                "rank": int_json(&r.rank),
                "volume": int_json(&r.volume),
                "exceptional": e.exceptional,
                "breakdown": breakdown_json(&r.breakdown),
            }))
        }
        Command::Exceptional(_) => {
            let beta = need(&p.beta, "beta")?;
            let e = is_exceptional(cfg, beta, budget)?;
            let witness = e.witness.as_ref().map(|(t1, t2, lam)| {
                json!({ "faces": [face_json(t1), face_json(t2)], "class": rats_json(lam) })
            });
            Ok(json!({
                "exceptional": e.exceptional,
                "rank": int_json(&e.rank),
                "volume": int_json(&e.volume),
                "witness": witness,
            }))
        }
        Command::Sweep(_) => {
            let opts = SweepOptions {
                degrees: s.window,
                margin: s.margin,
            };
            let found = exceptional_sweep(cfg, &opts, budget)?;
            Ok(json!({
                "window": [s.window.0, s.window.1],
                "margin": s.margin,
                "exceptional": found.iter().map(|b| rats_json(b)).collect::<Vec<_>>(),
            }))
        }
        Command::Cm(_) => Ok(cm_json(&is_cohen_macaulay(cfg, budget)?)),
        Command::Series(_) => {
            let beta = need(&p.beta, "beta")?;
            let w = weight(p)?;
            let t = regular_triangulation(cfg, &w)?;
            let mut all = Vec::new();
            for e in minex(cfg, &t, beta, budget)? {
                let sr = phi_series(cfg, &t, &e, &s.order, budget)?;
                let rep = verify_annihilation(cfg, &sr, beta, s.radius, budget)?;
                let terms: Vec<Value> = sr
                    .terms
                    .iter()
                    .map(|term| json!({ "u": ints_json(&term.u), "coeff": format_rational(&term.coeff) }))
                    .collect();
                let mut item = json!({
                    "exponent": rats_json(&e.v),
                    "face": e.face.as_ref().map(|f| f.vertices.clone()),
                    "terms": terms,
                    "annihilated": rep.passed(),
                });
                if s.verify {
                    let reference = oracle_series(cfg, &e.v, &w, &s.order, s.radius)?;
                    let agrees = reference.iter().all(|(u, c)| sr.coefficient(u) == Some(c));
                    item["verified"] = json!(agrees);
                }
                all.push(item);
            }
            Ok(json!({ "order": format_rational(&s.order), "series": all }))
        }
        Command::Iso(_) => {
            let beta = need(&p.beta, "beta")?;
            let beta2 = need(&p.beta2, "beta2")?;
            let f1 = fingerprint(cfg, beta, budget)?;
            let f2 = fingerprint(cfg, beta2, budget)?;
            let diff = f1.differences(&f2);
            Ok(json!({ "isomorphic": diff.is_empty(), "differences": diff }))
        }
        Command::Verify => Ok(verify_report(budget)),
    }
}

fn verify_report(budget: &Budget) -> Value {
    let checks = example_checks(budget);
    let passed = checks.iter().all(|c| c.passed);
    let list: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    json!({ "checks": list, "passed": passed })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Triangulate(_) => "triangulate",
        Command::Faces(_) => "faces",
        Command::Etau(_) => "etau",
        Command::Dim(_) => "dim",
        Command::Rank(_) => "rank",
        Command::Exceptional(_) => "exceptional",
        Command::Sweep(_) => "sweep",
        Command::Cm(_) => "cm",
        Command::Series(_) => "series",
        Command::Iso(_) => "iso",
        Command::Verify => "verify",
    }
}

/// Exit status for an error: 1 for unreadable input, 2 for failed
/// mathematical preconditions, 3 for exhausted budgets, 4 for failed
/// self-checks.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::DimensionMismatch { .. }
        | Error::NotHomogeneous
        | Error::RankDeficient { .. } => 1,
        Error::BudgetExceeded { .. } => 3,
        Error::InternalInconsistency(_) => 4,
        _ => 2,
    }
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

fn read_problem_text(file: Option<&PathBuf>) -> Result<String> {
    match file {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

fn input_of(c: &Command) -> Option<&Input> {
    match c {
        Command::Triangulate(i)
        | Command::Faces(i)
        | Command::Etau(i)
        | Command::Dim(i)
        | Command::Rank(i)
        | Command::Exceptional(i)
        | Command::Sweep(i)
        | Command::Cm(i)
        | Command::Series(i)
        | Command::Iso(i) => Some(i),
        Command::Verify => None,
    }
}

/// Full run on raw arguments: returns the exit code, standard output and
/// standard error.
pub fn run(args: Vec<String>) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (1, String::new(), text)
            };
        }
    };
    match run_parsed(&cli) {
        Ok((doc, ok)) => (if ok { 0 } else { 4 }, pretty(&doc), String::new()),
        Err(e) => (exit_code(&e), String::new(), pretty(&error_json(&e))),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn run_parsed(cli: &Cli) -> Result<(Value, bool)> {
    let name = command_name(&cli.command);
    if cli.command == Command::Verify {
        let s = settings(cli, &Options::default())?;
        let result = verify_report(&s.budget);
        let ok = result["passed"] == json!(true);
        return Ok((json!({ "command": name, "result": result }), ok));
    }
    let text = read_problem_text(input_of(&cli.command).and_then(|i| i.file.as_ref()))?;
    let p = parse_problem(&text)?;
    let s = settings(cli, &p.options)?;
    let result = execute(&cli.command, &p, &s)?;
    let ok = result.get("verified").map_or(true, |v| v == &json!(true))
        && result
            .get("series")
            .and_then(Value::as_array)
            .map_or(true, |xs| {
                xs.iter()
                    .all(|x| x.get("verified").map_or(true, |v| v == &json!(true)))
            });
    Ok((
        json!({ "command": name, "input": input_echo(&p), "result": result }),
        ok,
    ))
}
