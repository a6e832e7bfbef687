//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the exit code with the rendered output, so the binary stays a thin
//! wrapper and the whole surface is testable in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bidiff::{
    ansatz, contact_generators, find_violation, full_generators, minimal_degree_bound,
    solve_invariant_space, Algebra, BiDiffOp, ClassificationResult, Generator, Violation,
    WeightMap,
};
use crate::closedform::{self, near_resonance};
use crate::error::Error;
use crate::glmod::decompose_case;
use crate::linalg::{normalize, rref};
use crate::rational::{self, q, qi, Rational};
use crate::sampling::Lcg;
use crate::superpoly::Parity;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "grc",
    version,
    about = "Invariant bilinear differential operators, exactly"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Solve for the space of invariant operators at one order and weight pair.
    Classify(RunConfig),
    /// Check a named operator family for invariance.
    Verify(RunConfig),
    /// Tabulate dimensions and case labels over a weight grid.
    Table(RunConfig),
    /// Compare the oracle basis with the closed-form basis.
    OracleDiff(RunConfig),
    /// Run a short battery of internal consistency checks.
    Selftest(RunConfig),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Verify(_) => "verify",
            Command::Table(_) => "table",
            Command::OracleDiff(_) => "oracle-diff",
            Command::Selftest(_) => "selftest",
        }
    }

    fn config(&self) -> &RunConfig {
        match self {
            Command::Classify(c)
            | Command::Verify(c)
            | Command::Table(c)
            | Command::OracleDiff(c)
            | Command::Selftest(c) => c,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Operator,
    Singular,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Rc,
    Grozman,
    Order1,
    SuperOrder1,
    Cmz,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, default_value = "pgl2")]
    pub algebra: Algebra,
    /// Order; a positive integer or half-integer `k` for the cmz family.
    #[arg(long, allow_hyphen_values = true)]
    pub order: Option<String>,
    #[arg(long)]
    pub order_max: Option<u32>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub mu1: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub mu2: Option<Rational>,
    /// Whether weights are density weights or singular-vector parameters.
    #[arg(long, value_enum, default_value = "operator")]
    pub side: Side,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub a: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub b: Option<Rational>,
    /// Defaults to 2·order + 3; may only be raised.
    #[arg(long)]
    pub degree_bound: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random weight pairs added to a table grid.
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    /// Add one to a coefficient before verifying (negative control).
    #[arg(long)]
    pub perturb: bool,
    /// Include wall-clock time in the output (breaks byte-identity).
    #[arg(long)]
    pub timing: bool,
    #[arg(
        long,
        env = "GRC_MAX_ORDER",
        default_value_t = 8,
        hide_env_values = true
    )]
    pub max_order: u32,
}

/// Exit code and rendered streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl std::fmt::Display) -> Outcome {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// A command's structured result before rendering.
struct Report {
    success: bool,
    body: Value,
    text: String,
}

fn fmt_q(r: &Rational) -> String {
    rational::format(r)
}

fn usage_err(e: Error) -> Outcome {
    Outcome::usage(e)
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    execute(&cli.command)
}

pub fn execute(command: &Command) -> Outcome {
    let cfg = command.config();
    let start = Instant::now();
    let report = match command {
        Command::Classify(c) => cmd_classify(c),
        Command::Verify(c) => cmd_verify(c),
        Command::Table(c) => cmd_table(c),
        Command::OracleDiff(c) => cmd_oracle_diff(c),
        Command::Selftest(_) => Ok(cmd_selftest()),
    };
    let report = match report {
        Ok(r) => r,
        Err(out) => return out,
    };
    let code = if report.success { 0 } else { 1 };
    let stdout = match cfg.format {
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("version".into(), json!(VERSION));
            doc.insert("command".into(), json!(command.name()));
            doc.insert("config".into(), config_echo(cfg));
            doc.insert(
                "status".into(),
                json!(if report.success { "pass" } else { "fail" }),
            );
            doc.insert("result".into(), report.body);
            if cfg.timing {
                doc.insert(
                    "timing_ms".into(),
                    json!(start.elapsed().as_millis() as u64),
                );
            }
            let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = report.text;
            if cfg.timing {
                let _ = writeln!(s, "time: {} ms", start.elapsed().as_millis());
            }
            s
        }
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn config_echo(c: &RunConfig) -> Value {
    let opt_q = |r: &Option<Rational>| r.as_ref().map(fmt_q);
    json!({
        "algebra": c.algebra,
        "order": c.order,
        "order_max": c.order_max,
        "mu1": opt_q(&c.mu1),
        "mu2": opt_q(&c.mu2),
        "side": c.side,
        "family": c.family,
        "a": opt_q(&c.a),
        "b": opt_q(&c.b),
        "degree_bound": c.degree_bound,
        "seed": c.seed,
        "samples": c.samples,
        "perturb": c.perturb,
        "max_order": c.max_order,
    })
}

fn require<'a, T>(v: &'a Option<T>, flag: &str) -> Result<&'a T, Outcome> {
    v.as_ref()
        .ok_or_else(|| Outcome::usage(format!("--{flag} is required")))
}

fn integer_order(c: &RunConfig) -> Result<u32, Outcome> {
    let text = require(&c.order, "order")?;
    text.trim().parse::<u32>().map_err(|_| {
        Outcome::usage(format!(
            "--order expects a non-negative integer, got {text:?}"
        ))
    })
}

fn check_degree_bound(c: &RunConfig, order: u32) -> Result<u32, Outcome> {
    let needed = minimal_degree_bound(order);
    match c.degree_bound {
        None => Ok(needed),
        Some(b) if b >= needed => Ok(b),
        Some(b) => Err(usage_err(Error::DegreeBound {
            bound: b as usize,
            order: order as usize,
            needed: needed as usize,
        })),
    }
}

/// Operator-side weights and singular-vector parameters of the configured pair.
fn weight_pair(c: &RunConfig) -> Result<([Rational; 2], [Rational; 2]), Outcome> {
    let m1 = require(&c.mu1, "mu1")?.clone();
    let m2 = require(&c.mu2, "mu2")?.clone();
    let map = WeightMap::frozen(c.algebra);
    Ok(match c.side {
        Side::Operator => {
            let sv = [map.to_sv(&m1), map.to_sv(&m2)];
            ([m1, m2], sv)
        }
        Side::Singular => {
            let w = [map.to_density(&m1), map.to_density(&m2)];
            (w, [m1, m2])
        }
    })
}

fn op_json(op: &BiDiffOp) -> Value {
    let coeffs: Map<String, Value> = op
        .coeffs
        .iter()
        .map(|(k, v)| (k.to_string(), json!(fmt_q(v))))
        .collect();
    json!({ "parity": op.parity.to_string(), "coefficients": coeffs })
}

fn op_text(op: &BiDiffOp) -> String {
    let terms: Vec<String> = op
        .coeffs
        .iter()
        .map(|(k, v)| format!("{} [{}]", fmt_q(v), k))
        .collect();
    format!("{}: {}", op.parity, terms.join(" + "))
}

fn classification_json(res: &ClassificationResult, shown: &[Rational; 2], side: Side) -> Value {
    json!({
        "algebra": res.algebra,
        "order": res.order,
        "weights": shown.iter().map(fmt_q).collect::<Vec<_>>(),
        "side": side,
        "operator_weights": res.weights.iter().map(fmt_q).collect::<Vec<_>>(),
        "dimension": { "even": res.dim_even, "odd": res.dim_odd },
        "case": res.case_label,
        "basis": res.basis.iter().map(op_json).collect::<Vec<_>>(),
    })
}

fn cmd_classify(c: &RunConfig) -> Result<Report, Outcome> {
    let order = integer_order(c)?;
    check_degree_bound(c, order)?;
    let (w, _) = weight_pair(c)?;
    let res = solve_invariant_space(c.algebra, order, &w[0], &w[1]).map_err(usage_err)?;
    let shown = [c.mu1.clone().unwrap(), c.mu2.clone().unwrap()];
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} order {} weights ({}, {}) [{}]: dim {}|{}  case {}",
        c.algebra,
        order,
        fmt_q(&shown[0]),
        fmt_q(&shown[1]),
        if c.side == Side::Operator {
            "operator"
        } else {
            "singular"
        },
        res.dim_even,
        res.dim_odd,
        res.case_label
    );
    for op in &res.basis {
        let _ = writeln!(text, "  {}", op_text(op));
    }
    Ok(Report {
        success: true,
        body: classification_json(&res, &shown, c.side),
        text,
    })
}

fn violation_json(v: &Violation) -> Value {
    json!({
        "generator": v.generator,
        "f": { "degree": v.f.0, "odd": v.f.1 },
        "g": { "degree": v.g.0, "odd": v.g.1 },
        "residual": v.residual.to_string(),
    })
}

fn family_operator(c: &RunConfig, family: Family) -> Result<(BiDiffOp, Vec<Generator>), Outcome> {
    let pair = || -> Result<(Rational, Rational), Outcome> {
        Ok((
            require(&c.mu1, "mu1")?.clone(),
            require(&c.mu2, "mu2")?.clone(),
        ))
    };
    let ab = || -> Result<(Rational, Rational), Outcome> {
        Ok((require(&c.a, "a")?.clone(), require(&c.b, "b")?.clone()))
    };
    Ok(match family {
        Family::Rc => {
            let (m1, m2) = pair()?;
            let op = closedform::rc_bracket(&m1, &m2, integer_order(c)?);
            (op, full_generators(Algebra::Pgl2))
        }
        Family::Grozman => (closedform::grozman(), full_generators(Algebra::Pgl2)),
        Family::Order1 => {
            let (a, b) = ab()?;
            (
                closedform::order1_family(&a, &b).map_err(usage_err)?,
                full_generators(Algebra::Pgl2),
            )
        }
        Family::SuperOrder1 => {
            let (a, b) = ab()?;
            let op = closedform::super_order1_family(&a, &b).map_err(usage_err)?;
            (op, contact_generators(3))
        }
        Family::Cmz => {
            let (m1, m2) = pair()?;
            let text = require(&c.order, "order")?;
            let k = rational::parse(text).map_err(usage_err)?;
            let op = closedform::cmz_bracket(&m1, &m2, &k).map_err(usage_err)?;
            (op, full_generators(Algebra::Osp12))
        }
    })
}

fn cmd_verify(c: &RunConfig) -> Result<Report, Outcome> {
    let family = *require(&c.family, "family")?;
    let (mut op, gens) = family_operator(c, family)?;
    let bound = check_degree_bound(c, op.order)?;
    if c.perturb {
        if let Some((_, v)) = op.coeffs.iter_mut().next() {
            *v += qi(1);
        }
    }
    let violation = find_violation(&op, &gens, bound).map_err(usage_err)?;
    let names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
    let mut text = format!(
        "{} family, order {}, weights ({}, {}), degree bound {}: ",
        family.to_possible_value().expect("named").get_name(),
        op.order,
        fmt_q(&op.weights[0]),
        fmt_q(&op.weights[1]),
        bound
    );
    match &violation {
        None => text.push_str("pass\n"),
        Some(v) => {
            let _ = writeln!(
                text,
                "FAIL under {} on (deg {}{}, deg {}{})",
                v.generator,
                v.f.0,
                if v.f.1 { " odd" } else { "" },
                v.g.0,
                if v.g.1 { " odd" } else { "" }
            );
        }
    }
    let _ = writeln!(text, "  {}", op_text(&op));
    Ok(Report {
        success: violation.is_none(),
        body: json!({
            "family": family,
            "algebra": op.algebra,
            "order": op.order,
            "weights": op.weights.iter().map(fmt_q).collect::<Vec<_>>(),
            "perturbed": c.perturb,
            "degree_bound": bound,
            "generators": names,
            "operator": op_json(&op),
            "verdict": if violation.is_none() { "pass" } else { "fail" },
            "counterexample": violation.as_ref().map(violation_json),
        }),
        text,
    })
}

/// Seeded random weight pairs off every resonance locus.
pub fn generic_samples(seed: u64, count: usize) -> Vec<[Rational; 2]> {
    let mut rng = Lcg::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let pair = [rng.rational(), rng.rational()];
        if !near_resonance(&pair[0], &pair[1]) {
            out.push(pair);
        }
    }
    out
}

/// Singular-side grid for order `n`: every even-integer pair in `[0, 2n]`,
/// then the random pairs.
pub fn table_grid(n: u32, random: &[[Rational; 2]]) -> Vec<[Rational; 2]> {
    let mut out = Vec::new();
    for a in 0..=n as i64 {
        for b in 0..=n as i64 {
            out.push([qi(2 * a), qi(2 * b)]);
        }
    }
    out.extend(random.iter().cloned());
    out
}

#[derive(Clone, Debug)]
struct Cell {
    order: u32,
    mu: [Rational; 2],
    dims: (usize, usize),
    closed: (usize, usize),
    case: String,
}

fn cmd_table(c: &RunConfig) -> Result<Report, Outcome> {
    let order_max = *require(&c.order_max, "order-max")?;
    if order_max > c.max_order {
        return Err(Outcome::usage(format!(
            "--order-max {order_max} exceeds the ceiling {} (GRC_MAX_ORDER)",
            c.max_order
        )));
    }
    let random = generic_samples(c.seed, c.samples);
    let alg = c.algebra;
    let map = WeightMap::frozen(alg);
    let jobs: Vec<(u32, [Rational; 2])> = (0..=order_max)
        .flat_map(|n| table_grid(n, &random).into_iter().map(move |mu| (n, mu)))
        .collect();
    let cells: Vec<Cell> = jobs
        .into_par_iter()
        .map(|(n, mu)| {
            let w = [map.to_density(&mu[0]), map.to_density(&mu[1])];
            let res = solve_invariant_space(alg, n, &w[0], &w[1]).expect("weights are valid");
            let closed = closedform::closed_form(alg, n, &mu[0], &mu[1]).dims();
            Cell {
                order: n,
                mu,
                dims: (res.dim_even, res.dim_odd),
                closed,
                case: res.case_label,
            }
        })
        .collect();
    let success = cells.iter().all(|cell| cell.dims == cell.closed);
    let rows: Vec<Value> = cells
        .iter()
        .map(|cell| {
            json!({
                "order": cell.order,
                "mu": cell.mu.iter().map(fmt_q).collect::<Vec<_>>(),
                "dimension": { "even": cell.dims.0, "odd": cell.dims.1 },
                "case": cell.case,
                "closed_form_agrees": cell.dims == cell.closed,
            })
        })
        .collect();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} (singular-vector parameters, {})",
        alg,
        map.describe()
    );
    let _ = writeln!(
        text,
        "{:>3}  {:>8}  {:>8}  {:>5}  {:<18} agrees",
        "n", "mu1", "mu2", "dims", "case"
    );
    for cell in &cells {
        let _ = writeln!(
            text,
            "{:>3}  {:>8}  {:>8}  {:>5}  {:<18} {}",
            cell.order,
            fmt_q(&cell.mu[0]),
            fmt_q(&cell.mu[1]),
            format!("{}|{}", cell.dims.0, cell.dims.1),
            cell.case,
            if cell.dims == cell.closed {
                "yes"
            } else {
                "NO"
            }
        );
    }
    Ok(Report {
        success,
        body: json!({
            "algebra": alg,
            "side": Side::Singular,
            "weight_map": map.describe(),
            "order_max": order_max,
            "cells": rows,
        }),
        text,
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum DiffVerdict {
    ExactMatch,
    SpanMatch,
    Mismatch,
}

impl std::fmt::Display for DiffVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DiffVerdict::ExactMatch => "EXACT-MATCH",
            DiffVerdict::SpanMatch => "SPAN-MATCH",
            DiffVerdict::Mismatch => "MISMATCH",
        })
    }
}

/// Compares a candidate basis with the oracle basis in one parity sector.
pub fn diff_sector(
    oracle: &[Vec<Rational>],
    candidate: &[Vec<Rational>],
    ncols: usize,
) -> DiffVerdict {
    let normalized: Vec<Vec<Rational>> = candidate.iter().map(|v| normalize(v)).collect();
    if normalized == oracle {
        DiffVerdict::ExactMatch
    } else if rref(candidate, ncols) == oracle {
        DiffVerdict::SpanMatch
    } else {
        DiffVerdict::Mismatch
    }
}

/// Worst verdict over both parity sectors, with per-sector details.
pub fn diff_bases(
    alg: Algebra,
    order: u32,
    oracle: &[BiDiffOp],
    candidate: &[BiDiffOp],
) -> (DiffVerdict, Vec<(Parity, DiffVerdict)>) {
    let mut sectors = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let keys = ansatz(alg, order, parity);
        let pick = |ops: &[BiDiffOp]| -> Vec<Vec<Rational>> {
            ops.iter()
                .filter(|o| o.parity == parity)
                .map(|o| o.vector(&keys))
                .collect()
        };
        sectors.push((
            parity,
            diff_sector(&pick(oracle), &pick(candidate), keys.len()),
        ));
    }
    let worst = sectors
        .iter()
        .map(|s| s.1)
        .max()
        .unwrap_or(DiffVerdict::ExactMatch);
    (worst, sectors)
}

fn cmd_oracle_diff(c: &RunConfig) -> Result<Report, Outcome> {
    let order = integer_order(c)?;
    let (w, sv) = weight_pair(c)?;
    let alg = c.algebra;
    let res = solve_invariant_space(alg, order, &w[0], &w[1]).map_err(usage_err)?;
    let family = closedform::closed_form(alg, order, &sv[0], &sv[1]);
    let (verdict, sectors) = diff_bases(alg, order, &res.basis, &family.basis);
    let sector_json = |s: &[(Parity, DiffVerdict)]| -> Value {
        s.iter()
            .map(|(p, v)| (p.to_string(), json!(v.to_string())))
            .collect::<Map<_, _>>()
            .into()
    };
    let mut body = json!({
        "algebra": alg,
        "order": order,
        "weights": w.iter().map(fmt_q).collect::<Vec<_>>(),
        "singular_parameters": sv.iter().map(fmt_q).collect::<Vec<_>>(),
        "case": family.label.tag(),
        "verdict": verdict.to_string(),
        "sectors": sector_json(&sectors),
        "oracle_basis": res.basis.iter().map(op_json).collect::<Vec<_>>(),
        "closed_form_basis": family.basis.iter().map(op_json).collect::<Vec<_>>(),
    });
    let mut text = format!(
        "{} order {} weights ({}, {}) case {}: {}\n",
        alg,
        order,
        fmt_q(&w[0]),
        fmt_q(&w[1]),
        family.label,
        verdict
    );
    if alg == Algebra::Osp12 {
        let literal = closedform::reference_system(&sv[0], &sv[1], order);
        let (lv, ls) = diff_bases(alg, order, &res.basis, &literal);
        body["reference_system"] = json!({
            "verdict": lv.to_string(),
            "sectors": sector_json(&ls),
            "basis": literal.iter().map(op_json).collect::<Vec<_>>(),
        });
        let _ = writeln!(text, "  reference system: {lv}");
    }
    if verdict == DiffVerdict::Mismatch {
        let _ = writeln!(text, "  oracle:");
        for op in &res.basis {
            let _ = writeln!(text, "    {}", op_text(op));
        }
        let _ = writeln!(text, "  closed form:");
        for op in &family.basis {
            let _ = writeln!(text, "    {}", op_text(op));
        }
    }
    Ok(Report {
        success: verdict != DiffVerdict::Mismatch,
        body,
        text,
    })
}

fn cmd_selftest() -> Report {
    let mut checks: Vec<(&str, bool)> = Vec::new();
    let groz = closedform::grozman();
    checks.push((
        "grozman invariant",
        find_violation(&groz, &full_generators(Algebra::Pgl2), 9)
            .map(|v| v.is_none())
            .unwrap_or(false),
    ));
    let groz_space = solve_invariant_space(Algebra::Pgl2, 3, &q(-2, 3), &q(-2, 3));
    checks.push((
        "grozman space is one-dimensional",
        groz_space
            .map(|r| r.dim_even == 1 && r.dim_odd == 0)
            .unwrap_or(false),
    ));
    let mut perturbed = groz.clone();
    if let Some((_, v)) = perturbed.coeffs.iter_mut().next() {
        *v += qi(1);
    }
    checks.push((
        "perturbed operator is caught",
        find_violation(&perturbed, &full_generators(Algebra::Pgl2), 9)
            .map(|v| v.is_some())
            .unwrap_or(false),
    ));
    let mut agree = true;
    for alg in Algebra::ALL {
        for order in 0..=3 {
            for mu in [[q(1, 3), q(-2, 7)], [qi(2), qi(2)]] {
                let map = WeightMap::frozen(alg);
                let res = solve_invariant_space(
                    alg,
                    order,
                    &map.to_density(&mu[0]),
                    &map.to_density(&mu[1]),
                );
                let family = closedform::closed_form(alg, order, &mu[0], &mu[1]);
                agree &= res
                    .map(|r| {
                        diff_bases(alg, order, &r.basis, &family.basis).0 != DiffVerdict::Mismatch
                    })
                    .unwrap_or(false);
            }
        }
    }
    checks.push(("oracle agrees with closed forms", agree));
    checks.push((
        "gl(1|1) tensor cases",
        decompose_case(&qi(1), &q(1, 2), &qi(2), &qi(3)).verified()
            && decompose_case(&qi(2), &qi(0), &qi(-2), &qi(1)).verified(),
    ));
    let success = checks.iter().all(|c| c.1);
    let mut text = String::new();
    for (name, ok) in &checks {
        let _ = writeln!(text, "{} {}", if *ok { "ok  " } else { "FAIL" }, name);
    }
    Report {
        success,
        body: json!({
            "checks": checks.iter().map(|(n, ok)| json!({ "name": n, "passed": ok })).collect::<Vec<_>>()
        }),
        text,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grc(args: &[&str]) -> Outcome {
        run(std::iter::once("grc").chain(args.iter().copied()))
    }

    #[test]
    fn classify_grozman() {
        let out = grc(&[
            "classify",
            "--algebra",
            "pgl2",
            "--order",
            "3",
            "--mu1",
            "-2/3",
            "--mu2",
            "-2/3",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        let res = &doc["result"];
        assert_eq!(res["dimension"], json!({"even": 1, "odd": 0}));
        let c = &res["basis"][0]["coefficients"];
        assert_eq!(c["d1:0,o1:0,d2:3,o2:0"], json!("1"));
        assert_eq!(c["d1:1,o1:0,d2:2,o2:0"], json!("3/2"));
        assert_eq!(c["d1:2,o1:0,d2:1,o2:0"], json!("-3/2"));
        assert_eq!(c["d1:3,o1:0,d2:0,o2:0"], json!("-1"));
    }

    #[test]
    fn classify_examples() {
        let out = grc(&[
            "classify",
            "--algebra",
            "pgl21",
            "--order",
            "1",
            "--mu1",
            "0",
            "--mu2",
            "0",
            "--side",
            "singular",
        ]);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["result"]["dimension"], json!({"even": 0, "odd": 2}));
        let out = grc(&[
            "classify",
            "--algebra",
            "pgl2",
            "--order",
            "0",
            "--mu1",
            "5",
            "--mu2",
            "7",
        ]);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["result"]["dimension"], json!({"even": 1, "odd": 0}));
        assert_eq!(doc["result"]["case"], json!("product"));
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(
            grc(&["classify", "--order", "2", "--mu1", "1/0", "--mu2", "1"]).code,
            2
        );
        assert_eq!(
            grc(&["classify", "--order", "2", "--mu1", "abc", "--mu2", "1"]).code,
            2
        );
        assert_eq!(grc(&["classify", "--order", "2", "--mu1", "1"]).code, 2);
        assert_eq!(
            grc(&["verify", "--family", "grozman", "--degree-bound", "8"]).code,
            2
        );
        assert_eq!(
            grc(&["verify", "--family", "cmz", "--order", "1/3", "--mu1", "1", "--mu2", "1"]).code,
            2
        );
        assert_eq!(
            grc(&["verify", "--family", "order1", "--a", "0", "--b", "0"]).code,
            2
        );
        assert_eq!(
            grc(&["table", "--algebra", "pgl21", "--order-max", "9"]).code,
            2
        );
    }

    #[test]
    fn verify_examples() {
        assert_eq!(grc(&["verify", "--family", "grozman"]).code, 0);
        assert_eq!(
            grc(&["verify", "--family", "grozman", "--degree-bound", "12"]).code,
            0
        );
        assert_eq!(
            grc(&["verify", "--family", "cmz", "--order", "3/2", "--mu1", "1/2", "--mu2", "2"])
                .code,
            0
        );
        assert_eq!(
            grc(&["verify", "--family", "order1", "--a", "2", "--b", "-1"]).code,
            0
        );
        assert_eq!(
            grc(&["verify", "--family", "super-order1", "--a", "1", "--b", "3"]).code,
            0
        );
        let out = grc(&[
            "verify",
            "--family",
            "rc",
            "--order",
            "2",
            "--mu1",
            "1",
            "--mu2",
            "1",
            "--perturb",
        ]);
        assert_eq!(out.code, 1);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["result"]["verdict"], json!("fail"));
        assert!(doc["result"]["counterexample"]["generator"].is_string());
    }

    #[test]
    fn oracle_diff_verdicts() {
        let out = grc(&[
            "oracle-diff",
            "--algebra",
            "pgl2",
            "--order",
            "4",
            "--mu1",
            "1/3",
            "--mu2",
            "2/7",
        ]);
        assert_eq!(out.code, 0);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc["result"]["verdict"], json!("EXACT-MATCH"));
        let out = grc(&[
            "oracle-diff",
            "--algebra",
            "pgl21",
            "--order",
            "3",
            "--mu1",
            "0",
            "--mu2",
            "2",
            "--side",
            "singular",
        ]);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(
            doc["result"]["sectors"],
            json!({"even": "EXACT-MATCH", "odd": "EXACT-MATCH"})
        );
        let out = grc(&[
            "oracle-diff",
            "--algebra",
            "osp12",
            "--order",
            "4",
            "--mu1",
            "1/3",
            "--mu2",
            "2/7",
        ]);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(doc["result"]["reference_system"]["verdict"].is_string());
    }

    #[test]
    fn diff_sector_distinguishes_normalization() {
        let o = vec![vec![qi(1), qi(0)], vec![qi(0), qi(1)]];
        assert_eq!(diff_sector(&o, &o, 2), DiffVerdict::ExactMatch);
        assert_eq!(
            diff_sector(&o, &[vec![qi(1), qi(1)], vec![qi(0), qi(3)]], 2),
            DiffVerdict::SpanMatch
        );
        assert_eq!(
            diff_sector(&o, &[vec![qi(1), qi(1)]], 2),
            DiffVerdict::Mismatch
        );
    }

    #[test]
    fn table_entries() {
        let out = grc(&[
            "table",
            "--algebra",
            "pgl21",
            "--order-max",
            "3",
            "--seed",
            "3",
            "--samples",
            "4",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let doc: Value = serde_json::from_str(&out.stdout).unwrap();
        let cells = doc["result"]["cells"].as_array().unwrap();
        let find = |n: u64, a: &str, b: &str| {
            cells
                .iter()
                .find(|c| c["order"] == json!(n) && c["mu"] == json!([a, b]))
                .map(|c| c["dimension"].clone())
        };
        assert_eq!(find(2, "0", "0"), Some(json!({"even": 1, "odd": 1})));
        assert_eq!(find(3, "2", "4"), Some(json!({"even": 0, "odd": 2})));
        let text = grc(&[
            "table",
            "--algebra",
            "pgl2",
            "--order-max",
            "1",
            "--samples",
            "1",
            "--format",
            "text",
        ]);
        assert!(text.stdout.lines().count() > 3);
    }

    #[test]
    fn selftest_passes() {
        assert_eq!(grc(&["selftest"]).code, 0);
    }
}
