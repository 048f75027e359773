//! Command-line front end: JSON loaders and emitters, verb dispatch and
//! report rendering.
//!
//! Inputs are JSON, given inline (anything starting with `{` or `[`) or as
//! a file path. Machine output is JSON with sorted keys; it always carries
//! the tool version and the limits in force.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::arith::{Rational, Supernatural};
use crate::bratteli::{self, Edge, Intertwining, OrderedDiagram};
use crate::classify::{self, InvariantSet, Mode, Presentation};
use crate::embed::{self, EmbeddingClass, GridOrder};
use crate::error::Error;
use crate::spectrum::{self, GapStatus, Point, Relation, SystemLevels, TailSelector};
use crate::tuples::{self, IntTuple, NormTuple};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    /// 1 for usage, parse and input errors, 2 for internal invariant failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_internal() => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn perr(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{path}: {msg}"))
}

// ---------------------------------------------------------------- loading

/// Reads an inline literal or a file and parses it as JSON.
pub fn load_json(arg: &str) -> CliResult<Value> {
    let trimmed = arg.trim_start();
    let (text, origin) = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        (arg.to_string(), "inline input".to_string())
    } else {
        let text = std::fs::read_to_string(arg)
            .map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?;
        (text, arg.to_string())
    };
    serde_json::from_str(&text).map_err(|e| {
        CliError::Parse(format!(
            "{origin}: line {} column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> CliResult<&'a Value> {
    v.get(key)
        .ok_or_else(|| perr(path, format!("missing field \"{key}\"")))
}

/// The value under `key` if `v` is a single-key wrapper `{key: …}`, else `v`.
fn unwrap_tag<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.get(key).unwrap_or(v)
}

fn as_array<'a>(v: &'a Value, path: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(path, "expected an array"))
}

fn parse_big(v: &Value, path: &str) -> CliResult<BigUint> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(perr(path, "expected a positive integer")),
    };
    let n = BigUint::from_str(&text).map_err(|_| perr(path, format!("\"{text}\" is not a positive integer")))?;
    if n == BigUint::from(0u32) {
        return Err(perr(path, "must be positive"));
    }
    Ok(n)
}

fn parse_usize(v: &Value, path: &str) -> CliResult<usize> {
    let n = parse_big(v, path)?;
    usize::try_from(n).map_err(|_| perr(path, "too large"))
}

fn parse_index(v: &Value, path: &str) -> CliResult<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| perr(path, "expected a nonnegative index"))
}

fn parse_int_tuple_value(v: &Value, path: &str) -> CliResult<IntTuple> {
    let entries = as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, e)| parse_big(e, &format!("{path}[{i}]")))
        .collect::<CliResult<Vec<_>>>()?;
    IntTuple::new(entries).map_err(|e| perr(path, e))
}

/// `{"tuple":[…]}` or a bare array.
pub fn parse_tuple(v: &Value) -> CliResult<IntTuple> {
    parse_int_tuple_value(unwrap_tag(v, "tuple"), "tuple")
}

/// `{"normalized":["1/1", …]}`.
pub fn parse_normalized(v: &Value) -> CliResult<NormTuple> {
    let path = "normalized";
    let entries = as_array(unwrap_tag(v, path), path)?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let p = format!("{path}[{i}]");
            let s = e.as_str().ok_or_else(|| perr(&p, "expected a \"num/den\" string"))?;
            Rational::from_str(s).map_err(|e| perr(&p, e))
        })
        .collect::<CliResult<Vec<_>>>()?;
    NormTuple::new(entries).map_err(|e| perr(path, e))
}

/// A tuple or a normalized tuple, normalized.
fn parse_any_tuple(v: &Value) -> CliResult<NormTuple> {
    if v.get("normalized").is_some() {
        parse_normalized(v)
    } else {
        Ok(tuples::normalize(&parse_tuple(v)?).1)
    }
}

pub fn parse_presentation(v: &Value) -> CliResult<Presentation> {
    let path = "presentation";
    let body = unwrap_tag(v, path);
    let list = |key: &str| -> CliResult<Vec<IntTuple>> {
        let p = format!("{path}.{key}");
        as_array(field(body, key, path)?, &p)?
            .iter()
            .enumerate()
            .map(|(i, t)| parse_int_tuple_value(t, &format!("{p}[{i}]")))
            .collect()
    };
    let prefix = match body.get("prefix") {
        None => Vec::new(),
        Some(_) => list("prefix")?,
    };
    Presentation::new(prefix, list("period")?).map_err(|e| perr(path, e))
}

fn parse_diagram_at(v: &Value, path: &str) -> CliResult<OrderedDiagram> {
    let src_count = parse_usize(field(v, "src_count", path)?, &format!("{path}.src_count"))?;
    let dst_count = parse_usize(field(v, "dst_count", path)?, &format!("{path}.dst_count"))?;
    let edges = as_array(field(v, "edges", path)?, &format!("{path}.edges"))?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let p = format!("{path}.edges[{i}]");
            Ok(Edge {
                src: parse_usize(field(e, "src", &p)?, &format!("{p}.src"))?,
                dst: parse_usize(field(e, "dst", &p)?, &format!("{p}.dst"))?,
                mult: parse_big(field(e, "mult", &p)?, &format!("{p}.mult"))?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let fo_path = format!("{path}.fiber_order");
    let d = match v.get("fiber_order") {
        None => OrderedDiagram::with_edge_order(src_count, dst_count, edges)
            .map_err(|e| perr(path, e))?,
        Some(fo) => {
            let obj = fo
                .as_object()
                .ok_or_else(|| perr(&fo_path, "expected an object from target to edge indices"))?;
            let mut fiber_order = vec![Vec::new(); dst_count];
            for (key, list) in obj {
                let p = format!("{fo_path}.{key}");
                let w: usize = key
                    .parse()
                    .ok()
                    .filter(|w| (1..=dst_count).contains(w))
                    .ok_or_else(|| perr(&p, "key is not a target vertex"))?;
                fiber_order[w - 1] = as_array(list, &p)?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| parse_index(x, &format!("{p}[{i}]")))
                    .collect::<CliResult<_>>()?;
            }
            let d = OrderedDiagram {
                src_count,
                dst_count,
                edges,
                fiber_order,
            };
            let diag = d.validate();
            if !diag.is_empty() {
                return Err(perr(path, format!("invalid diagram: {}", diag.join("; "))));
            }
            d
        }
    };
    Ok(d)
}

pub fn parse_diagram(v: &Value) -> CliResult<OrderedDiagram> {
    parse_diagram_at(unwrap_tag(v, "diagram"), "diagram")
}

pub fn parse_grid(v: &Value) -> CliResult<GridOrder> {
    let path = "grid";
    let body = unwrap_tag(v, path);
    let n = parse_usize(field(body, "n", path)?, "grid.n")?;
    let k = parse_usize(field(body, "k", path)?, "grid.k")?;
    let rank = as_array(field(body, "rank", path)?, "grid.rank")?
        .iter()
        .enumerate()
        .map(|(i, x)| parse_usize(x, &format!("grid.rank[{i}]")))
        .collect::<CliResult<Vec<_>>>()?;
    GridOrder::new(n, k, rank).map_err(|e| perr(path, e))
}

pub fn parse_point(v: &Value) -> CliResult<Point> {
    let path = "point";
    let body = unwrap_tag(v, path);
    let prefix = match body.get("prefix") {
        None => Vec::new(),
        Some(p) => as_array(p, "point.prefix")?
            .iter()
            .enumerate()
            .map(|(i, x)| parse_usize(x, &format!("point.prefix[{i}]")))
            .collect::<CliResult<_>>()?,
    };
    let tail = as_array(field(body, "tail", path)?, "point.tail")?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let p = format!("point.tail[{i}]");
            let obj = s.as_object().filter(|o| o.len() == 1).ok_or_else(|| {
                perr(&p, "expected one of {\"index\":v}, {\"minF\":s}, {\"maxF\":s}")
            })?;
            let (key, val) = obj.iter().next().expect("one entry");
            let n = parse_usize(val, &format!("{p}.{key}"))?;
            match key.as_str() {
                "index" => Ok(TailSelector::Index(n)),
                "minF" => Ok(TailSelector::MinOfF(n)),
                "maxF" => Ok(TailSelector::MaxOfF(n)),
                other => Err(perr(&p, format!("unknown selector \"{other}\""))),
            }
        })
        .collect::<CliResult<Vec<_>>>()?;
    Point::new(prefix, tail).map_err(|e| perr(path, e))
}

/// `{"orders":[[[1],[2]], [[1,1],…], …]}`: level `m` as a chain of prefixes.
pub fn parse_orders(v: &Value) -> CliResult<Vec<Vec<Vec<usize>>>> {
    let path = "orders";
    as_array(unwrap_tag(v, path), path)?
        .iter()
        .enumerate()
        .map(|(m, level)| {
            let p = format!("{path}[{m}]");
            as_array(level, &p)?
                .iter()
                .enumerate()
                .map(|(i, pre)| {
                    let pp = format!("{p}[{i}]");
                    as_array(pre, &pp)?
                        .iter()
                        .enumerate()
                        .map(|(j, x)| parse_usize(x, &format!("{pp}[{j}]")))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Owned intertwining data.
#[derive(Debug, Clone)]
pub struct IntertwiningInput {
    pub chain_a: Vec<OrderedDiagram>,
    pub chain_b: Vec<OrderedDiagram>,
    pub e_prime: Vec<OrderedDiagram>,
    pub f_prime: Vec<OrderedDiagram>,
    pub f_map: Vec<usize>,
    pub g_map: Vec<usize>,
}

pub fn parse_intertwining(v: &Value) -> CliResult<IntertwiningInput> {
    let path = "intertwining";
    let body = unwrap_tag(v, path);
    let chain = |key: &str| -> CliResult<Vec<OrderedDiagram>> {
        let p = format!("{path}.{key}");
        as_array(field(body, key, path)?, &p)?
            .iter()
            .enumerate()
            .map(|(i, d)| parse_diagram_at(d, &format!("{p}[{i}]")))
            .collect()
    };
    let map = |key: &str| -> CliResult<Vec<usize>> {
        let p = format!("{path}.{key}");
        as_array(field(body, key, path)?, &p)?
            .iter()
            .enumerate()
            .map(|(i, x)| parse_usize(x, &format!("{p}[{i}]")))
            .collect()
    };
    Ok(IntertwiningInput {
        chain_a: chain("chain_a")?,
        chain_b: chain("chain_b")?,
        e_prime: chain("e_prime")?,
        f_prime: chain("f_prime")?,
        f_map: map("f_map")?,
        g_map: map("g_map")?,
    })
}

// --------------------------------------------------------------- emitting

fn big_json(n: &BigUint) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer literal is valid JSON")
}

fn rational_json(q: &Rational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

fn signed_json(q: &BigRational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn int_tuple_json(t: &IntTuple) -> Value {
    Value::Array(t.entries().iter().map(big_json).collect())
}

pub fn tuple_to_json(t: &IntTuple) -> Value {
    json!({ "tuple": int_tuple_json(t) })
}

pub fn norm_tuple_json(t: &NormTuple) -> Value {
    Value::Array(t.entries().iter().map(rational_json).collect())
}

pub fn normalized_to_json(t: &NormTuple) -> Value {
    json!({ "normalized": norm_tuple_json(t) })
}

pub fn presentation_to_json(p: &Presentation) -> Value {
    let list = |ts: &[IntTuple]| Value::Array(ts.iter().map(int_tuple_json).collect());
    json!({ "presentation": { "prefix": list(p.prefix()), "period": list(p.period()) } })
}

fn diagram_body(d: &OrderedDiagram) -> Value {
    let edges: Vec<Value> = d
        .edges
        .iter()
        .map(|e| json!({ "src": e.src, "dst": e.dst, "mult": big_json(&e.mult) }))
        .collect();
    let fiber_order: Map<String, Value> = d
        .fiber_order
        .iter()
        .enumerate()
        .map(|(w, f)| ((w + 1).to_string(), json!(f)))
        .collect();
    json!({
        "src_count": d.src_count,
        "dst_count": d.dst_count,
        "edges": edges,
        "fiber_order": fiber_order,
    })
}

pub fn diagram_to_json(d: &OrderedDiagram) -> Value {
    json!({ "diagram": diagram_body(d) })
}

pub fn grid_to_json(g: &GridOrder) -> Value {
    json!({ "grid": { "n": g.n(), "k": g.k(), "rank": g.ranks() } })
}

pub fn point_to_json(p: &Point) -> Value {
    let tail: Vec<Value> = p
        .tail()
        .iter()
        .map(|s| match s {
            TailSelector::Index(v) => json!({ "index": v }),
            TailSelector::MinOfF(v) => json!({ "minF": v }),
            TailSelector::MaxOfF(v) => json!({ "maxF": v }),
        })
        .collect();
    json!({ "point": { "prefix": p.prefix(), "tail": tail } })
}

fn supernatural_json(s: &Supernatural) -> Value {
    let finite: Map<String, Value> = s
        .finite_exponents()
        .iter()
        .map(|(p, e)| (p.to_string(), json!(e)))
        .collect();
    json!({
        "finite": finite,
        "infinite": s.infinite_primes().iter().map(big_json).collect::<Vec<_>>(),
        "display": s.to_string(),
    })
}

fn factors_json(fs: &[NormTuple]) -> Value {
    Value::Array(fs.iter().map(norm_tuple_json).collect())
}

fn fmt_factors(fs: &[NormTuple]) -> String {
    let parts: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn invariants_json(inv: &InvariantSet) -> Value {
    let mode = match &inv.mode {
        Mode::Geometric { lengths, root } => json!({
            "kind": "geometric",
            "lengths": supernatural_json(lengths),
            "root": rational_json(root),
        }),
        Mode::NonGeometric {
            prefix_factors,
            cycle_factors,
        } => json!({
            "kind": "non_geometric",
            "prefix_factors": factors_json(prefix_factors),
            "cycle_factors": factors_json(cycle_factors),
        }),
    };
    json!({
        "envelope": supernatural_json(&inv.envelope),
        "first_summand": supernatural_json(&inv.first_summand),
        "mode": mode,
    })
}

fn invariants_human(inv: &InvariantSet, out: &mut Vec<String>) {
    out.push(format!("envelope supernatural number: {}", inv.envelope));
    out.push(format!("first-summand supernatural number: {}", inv.first_summand));
    match &inv.mode {
        Mode::Geometric { lengths, root } => {
            out.push(format!(
                "geometric character: lengths {lengths}, reduced root {root} [{}]",
                classify::CITE_CLASSIFICATION
            ));
        }
        Mode::NonGeometric {
            prefix_factors,
            cycle_factors,
        } => {
            out.push(format!(
                "no geometric character: factor cycle {}, initial factors {} [{}]",
                fmt_factors(cycle_factors),
                fmt_factors(prefix_factors),
                classify::CITE_FACTORIZATION
            ));
        }
    }
}

// ---------------------------------------------------------------- commands

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "oplimit", version, about = "Exact analysis of order preserving limit-algebra presentations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Largest X_m materialized by order, coherence, gap and cocycle.
    #[arg(long, default_value_t = spectrum::DEFAULT_LIMIT, global = true)]
    pub limit: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Canonical and compressed factorizations of a tuple.
    Factor { tuple: String },
    /// Composite `outer ∘ inner` of two tuples (inner applied first).
    Compose { outer: String, inner: String },
    /// Classify a grid order, or the grid order of a tuple with --n.
    CheckEmbedding {
        input: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Contraction of two ordered diagrams, the first applied first.
    DiagramContract { first: String, second: String },
    /// Order equivalence of two ordered diagrams.
    DiagramEquiv { left: String, right: String },
    /// Check the intertwining equations up to a level.
    VerifyIntertwining {
        input: String,
        #[arg(long, default_value_t = 5)]
        horizon: usize,
    },
    /// The spectrum order on X_m.
    Order {
        presentation: String,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Coherence and hypercoherence of the orders of a presentation, or of
    /// explicit orders.
    Coherence {
        input: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        hyper: bool,
    },
    /// Gap-point status of a point and its successor.
    Gap {
        presentation: String,
        point: String,
        #[arg(long, default_value_t = 6)]
        horizon: usize,
    },
    /// Whether `x` lies in the orbit closure of `y`.
    Closure { presentation: String, x: String, y: String },
    /// Cocycle gap tables to a depth.
    Cocycle {
        presentation: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Comma-separated level-1 gaps ("num/den" or integers); default all 1.
        #[arg(long)]
        gaps: Option<String>,
        #[arg(long, default_value = "1")]
        transition: String,
    },
    /// Classification invariants of a presentation.
    Invariants { presentation: String },
    /// Isomorphism decision for two presentations.
    Iso { left: String, right: String },
}

/// A rendered result.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub verb: &'static str,
    pub result: Value,
    pub limits: BTreeMap<&'static str, Value>,
    pub human: Vec<String>,
}

impl Report {
    fn new(verb: &'static str) -> Self {
        Report {
            verb,
            result: Value::Null,
            limits: BTreeMap::new(),
            human: Vec::new(),
        }
    }

    fn limit(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.limits.insert(key, v.into());
        self
    }
}

pub fn emit(r: &Report, format: Format) -> String {
    match format {
        Format::Machine => {
            let doc = json!({
                "version": VERSION,
                "verb": r.verb,
                "limits": r.limits,
                "result": r.result,
            });
            // serde_json maps keep keys sorted.
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Human => {
            let mut s = String::new();
            for line in &r.human {
                let _ = writeln!(s, "{line}");
            }
            s
        }
    }
}

fn parse_rational_signed(s: &str) -> CliResult<BigRational> {
    let q = Rational::from_str(s.trim()).map_err(|e| CliError::Usage(format!("bad rational \"{s}\": {e}")))?;
    Ok(q.to_signed())
}

fn levels(arg: &str) -> CliResult<SystemLevels> {
    Ok(SystemLevels::new(parse_presentation(&load_json(arg)?)?)?)
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::Forward => "forward",
        Relation::Backward => "backward",
        Relation::Equal => "equal",
        Relation::Unrelated => "unrelated",
    }
}

fn gap_name(g: GapStatus) -> &'static str {
    match g {
        GapStatus::Gap => "gap",
        GapStatus::NotGap => "not_gap",
        GapStatus::ExceptionalXInfinity => "exceptional_x_infinity",
    }
}

fn chain_json(chain: &[Vec<usize>]) -> Value {
    json!(chain)
}

pub fn execute(cmd: &Command, limit: usize) -> CliResult<Report> {
    let mut r;
    match cmd {
        Command::Factor { tuple } => {
            let t = parse_any_tuple(&load_json(tuple)?)?;
            let canon = tuples::canonical_factorization(&t);
            let compressed = tuples::compress_factors(&canon);
            r = Report::new("factor");
            r.result = json!({
                "normalized": norm_tuple_json(&t),
                "canonical": factors_json(&canon),
                "compressed": factors_json(&compressed),
            });
            r.human.push(format!("normalized tuple {t}"));
            r.human.push(format!(
                "canonical factorization, outermost first: {} [unique factorization]",
                fmt_factors(&canon)
            ));
            r.human.push(format!(
                "compressed factorization: {} [unique factorization up to geometric runs]",
                fmt_factors(&compressed)
            ));
        }
        Command::Compose { outer, inner } => {
            let a = parse_tuple(&load_json(outer)?)?;
            let b = parse_tuple(&load_json(inner)?)?;
            let c = IntTuple::compose(&a, &b);
            r = Report::new("compose");
            r.result = tuple_to_json(&c);
            r.human.push(format!("{a} ∘ {b} = {c} [composition of refinement sums]"));
        }
        Command::CheckEmbedding { input, n } => {
            let v = load_json(input)?;
            let g = match n {
                Some(n) => embed::grid_order_from_int_tuple(*n, &parse_tuple(&v)?)?,
                None => parse_grid(&v)?,
            };
            let class = embed::classify_grid_order(&g)?;
            r = Report::new("check-embedding");
            let (kind, tuple) = match &class {
                EmbeddingClass::NotLop => ("not_lop", Value::Null),
                EmbeddingClass::Lop => ("lop", Value::Null),
                EmbeddingClass::Op(t) => ("op", json!(t)),
            };
            let violation = embed::find_pair_violation(&g).map(|v| {
                json!({ "g": v.g, "h": v.h, "i": v.i, "j": v.j, "a": v.a, "b": v.b })
            });
            r.result = json!({
                "grid": grid_to_json(&g)["grid"],
                "class": kind,
                "tuple": tuple,
                "pair_violation": violation,
            });
            r.human.push(match &class {
                EmbeddingClass::NotLop => {
                    "not locally order preserving: a pair of matrix units reverses order [pair criterion]".to_string()
                }
                EmbeddingClass::Lop => {
                    "locally order preserving but not order preserving [pair criterion, tuple extraction]".to_string()
                }
                EmbeddingClass::Op(t) => format!(
                    "order preserving, a direct sum of refinement embeddings with multiplicities {t:?} [tuple extraction]"
                ),
            });
        }
        Command::DiagramContract { first, second } => {
            let a = parse_diagram(&load_json(first)?)?;
            let b = parse_diagram(&load_json(second)?)?;
            let c = bratteli::contract(&a, &b)?;
            r = Report::new("diagram-contract");
            r.result = diagram_to_json(&c);
            r.human.push(format!("contraction: {c} [contraction of ordered diagrams]"));
        }
        Command::DiagramEquiv { left, right } => {
            let a = parse_diagram(&load_json(left)?)?;
            let b = parse_diagram(&load_json(right)?)?;
            let eq = bratteli::order_equivalent(&a, &b);
            r = Report::new("diagram-equiv");
            r.result = json!({ "order_equivalent": eq });
            r.human.push(format!(
                "{} [order equivalence of ordered diagrams]",
                if eq { "order equivalent" } else { "not order equivalent" }
            ));
        }
        Command::VerifyIntertwining { input, horizon } => {
            let d = parse_intertwining(&load_json(input)?)?;
            let view = Intertwining {
                chain_a: &d.chain_a,
                chain_b: &d.chain_b,
                e_prime: &d.e_prime,
                f_prime: &d.f_prime,
                f_map: &d.f_map,
                g_map: &d.g_map,
            };
            let rep = bratteli::verify_intertwining(&view, *horizon)?;
            r = Report::new("verify-intertwining").limit("horizon", *horizon);
            r.result = json!({ "holds": rep.holds, "verified_to": horizon, "failures": rep.failures });
            r.human.push(format!("{rep} [intertwining equations]"));
        }
        Command::Order { presentation, level } => {
            let s = levels(presentation)?;
            let chain = s.materialize_order(*level, limit)?;
            r = Report::new("order").limit("level", *level).limit("limit", limit);
            r.result = json!({ "level": level, "chain": chain_json(&chain) });
            r.human.push(format!("order on X_{level} [recursive spectrum order]:"));
            let parts: Vec<String> = chain
                .iter()
                .map(|p| format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            r.human.push(parts.join(" ≺ "));
        }
        Command::Coherence { input, depth, hyper } => {
            let v = load_json(input)?;
            let orders = if v.get("orders").is_some() {
                parse_orders(&v)?
            } else {
                let s = SystemLevels::new(parse_presentation(&v)?)?;
                (1..=*depth)
                    .map(|m| s.materialize_order(m, limit))
                    .collect::<Result<Vec<_>, _>>()?
            };
            let rep = spectrum::check_coherence(&orders, *hyper)?;
            r = Report::new("coherence").limit("depth", orders.len()).limit("limit", limit);
            r.result = json!({
                "coherent": rep.coherent,
                "hypercoherent": rep.hypercoherent,
                "failures": rep.failures,
            });
            r.human.push(format!(
                "{} to level {} [coherent representation of the spectrum]",
                if rep.coherent { "coherent" } else { "not coherent" },
                orders.len()
            ));
            if let Some(h) = rep.hypercoherent {
                r.human.push(format!(
                    "{} [hypercoherence and local order preservation of compositions]",
                    if h { "hypercoherent" } else { "not hypercoherent" }
                ));
            }
            r.human.extend(rep.failures.iter().cloned());
        }
        Command::Gap { presentation, point, horizon } => {
            let s = levels(presentation)?;
            let x = parse_point(&load_json(point)?)?;
            let status = s.is_gap_point(&x)?;
            r = Report::new("gap").limit("horizon", *horizon).limit("limit", limit);
            let mut result = json!({ "status": gap_name(status), "successor": Value::Null });
            match status {
                GapStatus::Gap => {
                    let succ = s.gap_successor(&x)?;
                    let immediate = s.verify_immediate_successor(&x, &succ, *horizon, limit)?;
                    if !immediate {
                        return Err(Error::invariant("gap successor is not immediate").into());
                    }
                    result["successor"] = point_to_json(&succ.point)["point"].clone();
                    result["split_level"] = json!(succ.split_level);
                    r.human.push(format!(
                        "gap point; right gap point has prefix {:?} and tail {:?}, adjacent from level {} (checked to level {horizon}) [gap point characterization]",
                        succ.point.prefix(),
                        succ.point.tail(),
                        succ.split_level
                    ));
                }
                GapStatus::NotGap => r
                    .human
                    .push("not a gap point: coordinates do not settle at max F_1 [gap point characterization]".into()),
                GapStatus::ExceptionalXInfinity => r.human.push(
                    "the point (k_n): exceptional, gap status depends on whether the algebra is a refinement algebra [gap point characterization]".into(),
                ),
            }
            r.result = result;
        }
        Command::Closure { presentation, x, y } => {
            let s = levels(presentation)?;
            let px = parse_point(&load_json(x)?)?;
            let py = parse_point(&load_json(y)?)?;
            let member = s.closure_member(&px, &py)?;
            let rel = s.related_points(&px, &py)?;
            r = Report::new("closure");
            r.result = json!({ "member": member, "relation": relation_name(rel) });
            r.human.push(format!(
                "x {} the orbit closure of y [orbit closure criterion]",
                if member { "lies in" } else { "does not lie in" }
            ));
            r.human.push(match rel {
                Relation::Unrelated => "tails differ: relation not decided".to_string(),
                other => format!("relation: {} [spectrum order on tail-equal points]", relation_name(other)),
            });
        }
        Command::Cocycle { presentation, depth, gaps, transition } => {
            let s = levels(presentation)?;
            let c1: Vec<BigRational> = match gaps {
                Some(g) if !g.trim().is_empty() => g.split(',').map(parse_rational_signed).collect::<CliResult<_>>()?,
                Some(_) => Vec::new(),
                None => vec![BigRational::from_integer(1.into()); s.k(1).saturating_sub(1)],
            };
            let tr = parse_rational_signed(transition)?;
            let table = spectrum::build_cocycle(&s, *depth, &c1, tr.clone(), limit)?;
            r = Report::new("cocycle").limit("depth", *depth).limit("limit", limit);
            let levels: Vec<Value> = table
                .gaps
                .iter()
                .enumerate()
                .map(|(m, g)| {
                    json!({
                        "level": m + 1,
                        "chain": chain_json(table.chain(m + 1).expect("within depth")),
                        "gaps": g.iter().map(signed_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            r.result = json!({ "transition": signed_json(&tr), "levels": levels });
            r.human.push(format!(
                "locally constant cocycle to depth {depth}, transition value {tr} [cocycle construction for order preserving limits]"
            ));
            for (m, g) in table.gaps.iter().enumerate() {
                let parts: Vec<String> = g.iter().map(|q| q.to_string()).collect();
                r.human.push(format!("level {}: gaps [{}]", m + 1, parts.join(", ")));
            }
        }
        Command::Invariants { presentation } => {
            let p = parse_presentation(&load_json(presentation)?)?;
            let inv = classify::invariants(&p)?;
            r = Report::new("invariants");
            r.result = invariants_json(&inv);
            r.human.push(format!("invariants of {p} (eventually periodic presentation)"));
            invariants_human(&inv, &mut r.human);
        }
        Command::Iso { left, right } => {
            let a = parse_presentation(&load_json(left)?)?;
            let b = parse_presentation(&load_json(right)?)?;
            let rep = classify::isomorphic(&a, &b)?;
            r = Report::new("iso");
            let checks: Vec<Value> = rep
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "holds": c.holds, "detail": c.detail }))
                .collect();
            r.result = json!({
                "isomorphic": rep.verdict,
                "checks": checks,
                "left": invariants_json(&rep.left),
                "right": invariants_json(&rep.right),
            });
            if rep.verdict {
                r.human.push(format!(
                    "isomorphic: all invariants agree [{}]",
                    classify::CITE_CLASSIFICATION
                ));
            } else {
                for c in rep.mismatches() {
                    r.human.push(format!("not isomorphic: {} [{}]", c.detail, c.citation));
                }
            }
            r.human.push("scope: eventually periodic presentations".into());
        }
    }
    Ok(r)
}

/// Parses arguments, runs the command and returns the exit code together
/// with what belongs on stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (1, String::new(), text) };
        }
    };
    match execute(&cli.command, cli.limit) {
        Ok(r) => (0, emit(&r, cli.format), String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
