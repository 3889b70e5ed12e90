//! Command-line front end: argument definitions, dispatch, and report
//! rendering. The binary only parses arguments and prints.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certify::{conjecture_global, prove_global_stability, CertVerdict, GsOptions, ProofMode, SemiVerdict};
use crate::dynsys::period::{detect_period_numeric, detect_period_symbolic};
use crate::dynsys::system::state_names;
use crate::dynsys::{DifferenceEquation, System, Transformation};
use crate::equilibria::fixed_points::{equation_fixed_points, fixed_points_numeric, positive_fixed_points, DEDUP_TOL};
use crate::equilibria::{diagonal_equilibria, local_stability};
use crate::error::{Error, Result};
use crate::invariants::{boundedness_certificate, find_invariant, invariant_drift};
use crate::periodic::conj1::ProofStatus;
use crate::periodic::manifold::{equation, EQUATIONS};
use crate::periodic::{
    build_smoothed_objective, extract_limit_cycle, manifold, multistart_certify, prove_conjecture1_rigorous,
    residual_norm, ResidualKind,
};
use crate::poly::scalar::{parse_scalar, to_f64};
use crate::poly::Scalar;

pub const SCHEMA: &str = "drds-report/1";
/// Newton starts for map fixed-point searches.
pub const FIXED_POINT_ATTEMPTS: usize = 200;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "drds", version, about = "Rational difference equations: orbits, equilibria, stability certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub args: Args,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Iterate an equation or map
    Simulate,
    /// Equilibria of an equation, or real fixed points of a map
    Equilibria,
    /// Jacobian spectrum at each positive fixed point
    LocalStability,
    /// Numeric check that random orbits share one limit
    ConjectureGs,
    /// Global-stability certificate by contraction
    ProveGs,
    /// Symbolic and numeric period detection
    Period,
    /// Invariant search and orbit bounds
    Invariant,
    /// Convergence to the periodic solutions of the four conjectures
    AlConjecture,
    /// Parse a system and echo its normal form
    ParseCheck,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Both,
}

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct Args {
    /// Difference equation, e.g. "x[n+1] = (1+x[n])/x[n-1]"
    #[arg(long, global = true)]
    pub eq: Option<String>,
    /// Comma-separated map components, e.g. "y, (1+y)/x"
    #[arg(long, global = true)]
    pub map: Option<String>,
    /// File holding an equation or a map
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Initial values, oldest first
    #[arg(long, global = true)]
    pub init: Option<String>,
    #[arg(long, global = true, default_value_t = 1000)]
    pub steps: usize,
    /// Number of trailing values (or states) to report
    #[arg(long, global = true)]
    pub tail: Option<usize>,
    /// float|exact for simulate; rigorous|semi for provers
    #[arg(long, global = true)]
    pub mode: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "max-r", global = true, default_value_t = 6)]
    pub max_r: usize,
    #[arg(long, global = true, default_value = "101/100")]
    pub alpha: String,
    #[arg(long, global = true)]
    pub starts: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 3)]
    pub degree: u32,
    /// Conjecture number, 1..4
    #[arg(long, global = true)]
    pub id: Option<usize>,
    /// euclidean|simple|fixed_point_residual; default euclidean for id 1,
    /// the fixed-point residual otherwise
    #[arg(long, global = true)]
    pub norm: Option<String>,
    /// Smoothing offsets `a < b`; default (1, 4) for id 1, (1, 1+p) otherwise
    #[arg(long, global = true)]
    pub a: Option<usize>,
    #[arg(long, global = true)]
    pub b: Option<usize>,
    /// Parameter values, e.g. "p=1"
    #[arg(long, global = true)]
    pub params: Option<String>,
    #[arg(long = "max-period", global = true, default_value_t = 20)]
    pub max_period: usize,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = crate::certify::rigorous::DEFAULT_BOX_BUDGET)]
    pub boxes: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorObject {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for ErrorObject {
    fn from(e: &Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug
            .split(|c: char| !c.is_alphanumeric())
            .next()
            .unwrap_or("Error")
            .to_string();
        ErrorObject {
            kind,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub config: Args,
    pub verdict: Option<String>,
    pub result: Option<Value>,
    pub error: Option<ErrorObject>,
    pub timing_ms: f64,
}

impl Report {
    /// 0 on success, proved or evidence; 2 on fail or unknown; 1 on error.
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            return 1;
        }
        match self.verdict.as_deref() {
            Some("fail") | Some("unknown") => 2,
            _ => 0,
        }
    }
}

/// Runs one command. Errors end up inside the report.
pub fn run(cli: &Cli) -> Report {
    let t0 = Instant::now();
    let out = dispatch(cli.command, &cli.args);
    let (verdict, result, error) = match out {
        Ok((v, r)) => (v, Some(r), None),
        Err(e) => (None, None, Some(ErrorObject::from(&e))),
    };
    Report {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command,
        config: cli.args.clone(),
        verdict,
        result,
        error,
        timing_ms: t0.elapsed().as_secs_f64() * 1e3,
    }
}

type Outcome = (Option<String>, Value);

fn dispatch(cmd: Command, a: &Args) -> Result<Outcome> {
    match cmd {
        Command::Simulate => simulate(a),
        Command::Equilibria => equilibria(a),
        Command::LocalStability => stability(a),
        Command::ConjectureGs => conjecture_gs(a),
        Command::ProveGs => prove_gs(a),
        Command::Period => period(a),
        Command::Invariant => invariant(a),
        Command::AlConjecture => al_conjecture(a),
        Command::ParseCheck => parse_check(a),
    }
}

/// An equation if the text has `=` or an indexed `[n` symbol, else a map.
pub fn parse_system(text: &str) -> Result<System> {
    if text.contains('=') || text.contains("[n") {
        Ok(System::Equation(DifferenceEquation::parse(text, None)?))
    } else {
        Ok(System::Map(Transformation::parse(text, None)?))
    }
}

fn load(a: &Args) -> Result<System> {
    match (&a.eq, &a.map, &a.file) {
        (Some(e), None, None) => Ok(System::Equation(DifferenceEquation::parse(e, None)?)),
        (None, Some(m), None) => Ok(System::Map(Transformation::parse(m, None)?)),
        (None, None, Some(f)) => {
            let text = std::fs::read_to_string(f)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", f.display())))?;
            parse_system(text.trim())
        }
        (None, None, None) => Err(Error::InvalidArgument("one of --eq, --map, --file is required".into())),
        _ => Err(Error::InvalidArgument("give only one of --eq, --map, --file".into())),
    }
}

fn load_equation(a: &Args) -> Result<DifferenceEquation> {
    match load(a)? {
        System::Equation(e) => Ok(e),
        System::Map(_) => Err(Error::InvalidArgument("this command needs an equation".into())),
    }
}

fn system_text(s: &System) -> String {
    match s {
        System::Equation(e) => e.to_string(),
        System::Map(m) => m.to_string(),
    }
}

fn parse_floats(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>()
                .or_else(|_| parse_scalar(t).map(|q| to_f64(&q)))
                .map_err(|_| Error::Parse {
                    pos: 0,
                    msg: format!("not a number: `{t}`"),
                })
        })
        .collect()
}

/// Integers, `p/q`, or decimals read exactly.
fn parse_exact(t: &str) -> Result<Scalar> {
    let t = t.trim();
    if let Some((i, f)) = t.split_once('.') {
        let digits = format!("{i}{f}");
        let den = format!("1{}", "0".repeat(f.len()));
        return parse_scalar(&format!("{digits}/{den}"));
    }
    parse_scalar(t)
}

fn init_f64(a: &Args, k: usize) -> Result<Vec<f64>> {
    let text = a.init.as_deref().ok_or_else(|| Error::InvalidArgument("--init is required".into()))?;
    let v = parse_floats(text)?;
    if v.len() != k {
        return Err(Error::InvalidArgument(format!("--init needs {k} values, got {}", v.len())));
    }
    Ok(v)
}

fn parse_params(a: &Args) -> Result<Vec<(String, Scalar)>> {
    let Some(text) = &a.params else { return Ok(Vec::new()) };
    text.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected name=value, got `{kv}`")))?;
            Ok((k.trim().to_string(), parse_exact(v)?))
        })
        .collect()
}

fn instantiate_system(s: System, vals: &[(String, Scalar)]) -> Result<System> {
    if vals.is_empty() {
        return Ok(s);
    }
    let v: Vec<(&str, Scalar)> = vals.iter().map(|(k, x)| (k.as_str(), x.clone())).collect();
    Ok(match s {
        System::Equation(e) => System::Equation(e.instantiate(&v)?),
        System::Map(m) => System::Map(m.instantiate(&v)?),
    })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn simulate(a: &Args) -> Result<Outcome> {
    let sys = instantiate_system(load(a)?, &parse_params(a)?)?;
    let exact = match a.mode.as_deref() {
        None | Some("float") => false,
        Some("exact") => true,
        Some(m) => return Err(Error::InvalidArgument(format!("simulate mode `{m}` is not float or exact"))),
    };
    let k = sys.dim();
    let tail_n = a.tail.unwrap_or(match sys {
        System::Equation(_) => k,
        System::Map(_) => 1,
    });
    let tail: Value = match (&sys, exact) {
        (System::Equation(e), false) => {
            let seq = e.sequence_float(&init_f64(a, k)?, a.steps)?;
            json!(seq[seq.len().saturating_sub(tail_n)..])
        }
        (System::Map(m), false) => {
            let o = m.orbit_float(&init_f64(a, k)?, a.steps)?;
            json!(o.states[o.states.len().saturating_sub(tail_n)..])
        }
        (_, true) => {
            let text = a.init.as_deref().ok_or_else(|| Error::InvalidArgument("--init is required".into()))?;
            let init = text.split(',').map(parse_exact).collect::<Result<Vec<_>>>()?;
            let values: Vec<Scalar> = match &sys {
                System::Equation(e) => {
                    let o = e.orbit_exact(&init, a.steps)?;
                    let s = o.sequence.expect("equation orbits carry a sequence");
                    s[s.len().saturating_sub(tail_n)..].to_vec()
                }
                System::Map(m) => m.orbit_exact(&init, a.steps)?.last_state().to_vec(),
            };
            json!(values
                .iter()
                .map(|q| json!({"exact": q.to_string(), "value": to_f64(q)}))
                .collect::<Vec<_>>())
        }
    };
    Ok((
        None,
        json!({"system": system_text(&sys), "steps": a.steps, "exact": exact, "tail": tail}),
    ))
}

fn equilibria(a: &Args) -> Result<Outcome> {
    let sys = instantiate_system(load(a)?, &parse_params(a)?)?;
    let v = match &sys {
        System::Equation(e) => {
            let d = diagonal_equilibria(e)?;
            json!({
                "system": e.to_string(),
                "polynomial": d.polynomial.to_string(),
                "roots": d.roots.iter().map(|r| json!({
                    "value": r.value,
                    "positive": r.positive,
                    "isolating_interval": [r.witness.lo.to_string(), r.witness.hi.to_string()],
                    "rational": r.witness.rational_value().map(|q| q.to_string()),
                })).collect::<Vec<_>>(),
            })
        }
        System::Map(m) => {
            let s = fixed_points_numeric(m, FIXED_POINT_ATTEMPTS, a.seed, DEDUP_TOL)?;
            json!({"system": m.to_string(), "search": to_value(&s)})
        }
    };
    Ok((None, v))
}

fn positive_points(sys: &System, seed: u64) -> Result<Vec<crate::equilibria::FixedPoint>> {
    match sys {
        System::Equation(e) => equation_fixed_points(e),
        System::Map(m) => Ok(positive_fixed_points(m, FIXED_POINT_ATTEMPTS, seed, DEDUP_TOL)?.points),
    }
}

fn stability(a: &Args) -> Result<Outcome> {
    let sys = instantiate_system(load(a)?, &parse_params(a)?)?;
    let map = sys.to_map();
    let reports = positive_points(&sys, a.seed)?
        .iter()
        .map(|fp| local_stability(&map, fp))
        .collect::<Result<Vec<_>>>()?;
    Ok((None, json!({"system": system_text(&sys), "reports": to_value(&reports)})))
}

fn conjecture_gs(a: &Args) -> Result<Outcome> {
    let sys = instantiate_system(load(a)?, &parse_params(a)?)?;
    let starts = a.starts.unwrap_or(20);
    let limit = conjecture_global(&sys.to_map(), a.steps, starts, a.seed);
    let verdict = if limit.is_some() { "evidence" } else { "fail" };
    Ok((
        Some(verdict.into()),
        json!({"system": system_text(&sys), "steps": a.steps, "orbits": starts, "limit": limit}),
    ))
}

fn proof_mode(a: &Args, default: ProofMode) -> Result<ProofMode> {
    match a.mode.as_deref() {
        None => Ok(default),
        Some("rigorous") => Ok(ProofMode::Rigorous),
        Some("semi") | Some("semi-rigorous") | Some("semi_rigorous") => Ok(ProofMode::SemiRigorous),
        Some(m) => Err(Error::InvalidArgument(format!("mode `{m}` is not rigorous or semi"))),
    }
}

fn prove_gs(a: &Args) -> Result<Outcome> {
    let sys = instantiate_system(load(a)?, &parse_params(a)?)?;
    let defaults = GsOptions::default();
    let opts = GsOptions {
        max_r: a.max_r,
        mode: proof_mode(a, defaults.mode)?,
        alpha: parse_exact(&a.alpha)?,
        seed: a.seed,
        samples: a.samples,
        starts: a.starts.unwrap_or(defaults.starts),
        epsilon: a.tol.unwrap_or(defaults.epsilon),
        box_budget: a.boxes,
        segments: defaults.segments,
    };
    let cert = prove_global_stability(&sys, &opts)?;
    let verdict = match cert.verdict {
        CertVerdict::Proved => "proved",
        CertVerdict::Evidence => "evidence",
        CertVerdict::Fail => "fail",
    };
    Ok((
        Some(verdict.into()),
        json!({"certificate": to_value(&cert), "theorem": cert.theorem()}),
    ))
}

fn period(a: &Args) -> Result<Outcome> {
    let eq = load_equation(a)?;
    let vals = parse_params(a)?;
    let eq = if vals.is_empty() {
        eq
    } else {
        let v: Vec<(&str, Scalar)> = vals.iter().map(|(k, x)| (k.as_str(), x.clone())).collect();
        eq.instantiate(&v)?
    };
    let symbolic = match detect_period_symbolic(&eq, a.max_period) {
        Ok(p) => json!({"period": p, "searched_up_to": a.max_period}),
        Err(e) => json!({"error": to_value(&ErrorObject::from(&e))}),
    };
    let numeric = match &a.init {
        Some(_) => {
            let init = init_f64(a, eq.order())?;
            let tol = a.tol.unwrap_or(1e-9);
            json!({"period": detect_period_numeric(&eq, &init, a.steps, tol, None)?, "steps": a.steps, "tol": tol})
        }
        None => Value::Null,
    };
    Ok((None, json!({"system": eq.to_string(), "symbolic": symbolic, "numeric": numeric})))
}

fn invariant(a: &Args) -> Result<Outcome> {
    let eq = load_equation(a)?;
    let found = find_invariant(&eq, a.degree)?;
    let vals = parse_params(a)?;
    let v: Vec<(&str, Scalar)> = vals.iter().map(|(k, x)| (k.as_str(), x.clone())).collect();
    let init = match &a.init {
        Some(_) => Some(init_f64(a, eq.order())?),
        None => None,
    };
    let items: Vec<Value> = found
        .iter()
        .map(|inv| {
            let mut item = json!({
                "invariant": inv.to_string(),
                "factored": inv.factored,
                "numerator": to_value(inv)["numerator"].clone(),
            });
            if let Some(init) = &init {
                item["bounds"] = match boundedness_certificate(inv, &v, init) {
                    Ok(b) => to_value(&b),
                    Err(e) => json!({"error": to_value(&ErrorObject::from(&e))}),
                };
                item["drift"] = match invariant_drift(&eq, inv, &v, init, a.steps) {
                    Ok(d) => json!(d),
                    Err(e) => json!({"error": to_value(&ErrorObject::from(&e))}),
                };
            }
            item
        })
        .collect();
    let verdict = if found.is_empty() { "fail" } else { "evidence" };
    Ok((
        Some(verdict.into()),
        json!({"system": eq.to_string(), "degree": a.degree, "order": eq.order(), "invariants": items}),
    ))
}

fn al_conjecture(a: &Args) -> Result<Outcome> {
    let id = a.id.ok_or_else(|| Error::InvalidArgument("--id is required".into()))?;
    let m = manifold(id)?;
    let eq = equation(id)?;
    let mode = proof_mode(a, ProofMode::SemiRigorous)?;
    let mut out = json!({
        "conjecture": id,
        "equation": EQUATIONS[id - 1],
        "period": m.period,
        "cycle_form": m.cycle_text,
        "printed_form": m.printed_text,
        "printed_form_valid": m.printed_valid,
        "constraint": if m.needs_product_above_one { Some("phi*psi > 1") } else { None },
        "mode": mode,
    });
    let verdict = match mode {
        ProofMode::Rigorous => {
            if id != 1 {
                return Err(Error::InvalidArgument("a rigorous path exists for conjecture 1 only".into()));
            }
            let p = prove_conjecture1_rigorous()?;
            out["proof"] = to_value(&p);
            out["theorem"] = json!(p.theorem);
            match p.status {
                ProofStatus::Proved => "proved",
                ProofStatus::Unknown => "unknown",
            }
        }
        ProofMode::SemiRigorous => {
            // Conjecture 1 defaults to the euclidean v with offsets (1, 4).
            let default_norm = if id == 1 { "euclidean" } else { "fixed_point_residual" };
            let kind: ResidualKind = a.norm.as_deref().unwrap_or(default_norm).parse()?;
            let norm = residual_norm(id, kind)?;
            let default_b = if id == 1 { 4 } else { 1 + m.period };
            let (oa, ob) = (a.a.unwrap_or(1), a.b.unwrap_or(default_b));
            let starts = a.starts.unwrap_or(36);
            let tol = a.tol.unwrap_or(1e-6);
            let mut runs = Vec::new();
            let mut all = true;
            for part in 0..norm.part_count() {
                let obj = build_smoothed_objective(&norm, part, oa, ob)?;
                let r = multistart_certify(&obj, starts, tol, a.seed);
                all &= r.verdict == SemiVerdict::Evidence;
                runs.push(r);
            }
            out["norm"] = to_value(&kind);
            out["offsets"] = json!([oa, ob]);
            out["starts"] = json!(starts);
            out["tol"] = json!(tol);
            out["minima"] = json!(runs
                .iter()
                .map(|r| r.minima.iter().map(|m| m.exact.unwrap_or(m.value)).collect::<Vec<_>>())
                .collect::<Vec<_>>());
            out["runs"] = to_value(&runs);
            out["theorem"] = json!(semi_theorem(id, &norm.labels, oa, ob, starts, tol, all, &runs));
            if all {
                "evidence"
            } else {
                "fail"
            }
        }
    };
    if a.init.is_some() {
        let init = init_f64(a, 3)?;
        let seq = eq.sequence_float(&init, a.steps)?;
        out["limit_cycle"] = match extract_limit_cycle(&seq, &m) {
            Ok(c) => to_value(&c),
            Err(e) => json!({"error": to_value(&ErrorObject::from(&e))}),
        };
    }
    Ok((Some(verdict.into()), out))
}

#[allow(clippy::too_many_arguments)]
fn semi_theorem(
    id: usize,
    labels: &[String],
    a: usize,
    b: usize,
    starts: usize,
    tol: f64,
    ok: bool,
    runs: &[crate::periodic::MultistartReport],
) -> String {
    let names = labels.join(" and ");
    if ok {
        format!(
            "Semi-rigorous evidence for conjecture {id}: with T the companion map of {}, \
             F = v(T^{a} x) - v(T^{b} x) for v = {names} had every one of {starts} local minima \
             on the positive orthant within {tol:e} of 0 or above. So v did not increase from T^{a} to T^{b} \
             at any point found. Caveat: non-increase alone does not force v to tend to 0, so this is \
             evidence of convergence to the cycle, not a proof.",
            EQUATIONS[id - 1]
        )
    } else {
        let worst = runs
            .iter()
            .map(|r| (r.worst_value, &r.worst_point))
            .min_by(|x, y| x.0.total_cmp(&y.0))
            .expect("at least one run");
        format!(
            "No evidence for conjecture {id} with v = {names} and offsets ({a}, {b}): \
             F = {:e} at {:?}, below -{tol:e}.",
            worst.0, worst.1
        )
    }
}

fn parse_check(a: &Args) -> Result<Outcome> {
    let sys = load(a)?;
    let printed = system_text(&sys);
    let (kind, round_trip, params) = match &sys {
        System::Equation(e) => {
            let back = DifferenceEquation::parse(&printed, Some(e.order()))?;
            ("equation", back.rhs().equal(e.rhs()), e.params().to_vec())
        }
        System::Map(m) => {
            let names: Vec<String> = m.vars()[..m.dim()].to_vec();
            let back = Transformation::parse(&printed, Some(&names))?;
            let same = back.dim() == m.dim()
                && back.components().iter().zip(m.components()).all(|(x, y)| {
                    x.vars()[..] == y.vars()[..] && x.equal(y)
                });
            ("map", same, m.params().to_vec())
        }
    };
    let _ = state_names;
    Ok((
        None,
        json!({"kind": kind, "dimension": sys.dim(), "params": params, "normal_form": printed, "round_trip": round_trip}),
    ))
}

// Rendering.

/// JSON with every float printed to 17 significant digits.
pub fn render_json(v: &Value) -> String {
    let mut out = String::new();
    write_json(v, 0, &mut out);
    out.push('\n');
    out
}

fn write_json(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    let close = "  ".repeat(indent);
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            let _ = write!(out, "{x:.16e}");
        }
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                let _ = write!(out, "{pad}{}: ", Value::String(k.clone()));
                write_json(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Ten significant digits.
pub fn fmt10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.9e}");
    let mag: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    if (-4..10).contains(&mag) {
        format!("{x:.*}", (9 - mag).max(0) as usize)
    } else {
        sci
    }
}

/// Indented `key: value` rendering of the same JSON value.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) if n.is_f64() => Some(fmt10(n.as_f64().expect("f64"))),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => Some(format!(
            "[{}]",
            items.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn write_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar_text(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        write_text(item, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar_text(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        write_text(item, indent + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other).unwrap_or_default());
        }
    }
}

pub fn render(report: &Report) -> String {
    let v = to_value(report);
    match report.config.format {
        Format::Json => render_json(&v),
        Format::Text => render_text(&v),
        Format::Both => format!("{}\n{}", render_json(&v), render_text(&v)),
    }
}
