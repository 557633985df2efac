//! Canonical JSON for every tefkit type.
//!
//! Output is compact, keys are sorted (`serde_json::Map` is a `BTreeMap`)
//! and rationals are written as reduced `"n"` or `"n/d"` strings, so equal
//! values always serialize to identical bytes. Readers accept rationals as
//! strings (`"-11/10"`, `"0.15"`) or JSON numbers and report errors with the
//! path of the offending field.

use serde_json::{json, Map, Value};
use tefkit_core::algorithms::{ClassReport, SolverTrace};
use tefkit_core::fairness::{FairnessReport, Welfare};
use tefkit_core::gadgets::{CnfFormula, IntegerMultiset, Provenance, Source};
use tefkit_core::rational::{self, Rational};
use tefkit_core::search::{Mode, Outcome, SearchQuery, SearchResult};
use tefkit_core::{Allocation, Error, Instance, Kind, Result};

/// Serializes `value` canonically, with a trailing newline.
pub fn to_canonical(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("values serialize");
    s.push('\n');
    s
}

/// Parses text into a JSON value; syntax errors carry line and column.
pub fn parse(text: &str, origin: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("{origin}: {e}")))
}

fn bad(path: &str, what: impl std::fmt::Display) -> Error {
    Error::Input(format!("{path}: {what}"))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(path, "expected an object"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| bad(path, format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(path, "expected an array"))
}

fn index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().and_then(|u| usize::try_from(u).ok()).ok_or_else(|| bad(path, "expected a nonnegative integer"))
}

fn indices(v: &Value, path: &str) -> Result<Vec<usize>> {
    array(v, path)?.iter().enumerate().map(|(k, x)| index(x, &format!("{path}[{k}]"))).collect()
}

fn rational_of(v: &Value, path: &str) -> Result<Rational> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(bad(path, "expected a rational as a string or number")),
    };
    rational::parse(&text).map_err(|e| bad(path, e))
}

fn rational_value(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

fn big_count(c: u128) -> Value {
    match u64::try_from(c) {
        Ok(small) => Value::from(small),
        Err(_) => Value::String(c.to_string()),
    }
}

pub fn instance_to_json(instance: &Instance, provenance: Option<&Provenance>, partial: Option<&Allocation>) -> Value {
    let mut obj = Map::new();
    obj.insert("agents".into(), instance.n_agents().into());
    obj.insert("kind".into(), instance.kind().name().into());
    obj.insert("rounds".into(), json!(instance.rounds()));
    let values: Vec<Vec<Value>> =
        instance.values().iter().map(|row| row.iter().map(rational_value).collect()).collect();
    obj.insert("values".into(), json!(values));
    if let Some(p) = provenance {
        obj.insert("provenance".into(), provenance_to_json(p, partial));
    }
    Value::Object(obj)
}

/// Reads an instance; a `provenance` field is accepted and ignored.
pub fn instance_from_json(v: &Value) -> Result<Instance> {
    let obj = object(v, "instance")?;
    let agents = index(field(obj, "agents", "instance")?, "agents")?;
    let kind_text = field(obj, "kind", "instance")?.as_str().ok_or_else(|| bad("kind", "expected a string"))?;
    let kind = Kind::from_name(kind_text)
        .ok_or_else(|| bad("kind", format!("unknown kind {kind_text:?}; expected goods, chores or mixed")))?;
    let rounds = array(field(obj, "rounds", "instance")?, "rounds")?
        .iter()
        .enumerate()
        .map(|(t, r)| indices(r, &format!("rounds[{t}]")))
        .collect::<Result<Vec<_>>>()?;
    let values = array(field(obj, "values", "instance")?, "values")?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let path = format!("values[{i}]");
            array(row, &path)?.iter().enumerate().map(|(o, x)| rational_of(x, &format!("{path}[{o}]"))).collect()
        })
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "agents" | "kind" | "rounds" | "values" | "provenance") {
            return Err(bad("instance", format!("unknown field {key:?}")));
        }
    }
    Instance::new(agents, kind, rounds, values)
}

pub fn allocation_to_json(a: &Allocation) -> Value {
    json!({ "assignment": a.assignment })
}

pub fn allocation_from_json(v: &Value) -> Result<Allocation> {
    let obj = object(v, "allocation")?;
    Ok(Allocation::new(indices(field(obj, "assignment", "allocation")?, "assignment")?))
}

pub fn report_to_json(r: &FairnessReport) -> Value {
    let witness = r
        .witness
        .as_ref()
        .map_or(Value::Null, |w| json!({ "round": w.round, "envious": w.envious, "envied": w.envied }));
    json!({ "holds": r.holds, "witness": witness })
}

pub fn welfare_to_json(p: &str, w: &Welfare) -> Value {
    match w {
        Welfare::Exact(v) => json!({ "p": p, "welfare": rational_value(v) }),
        Welfare::Bounds { lower, upper } => {
            json!({ "p": p, "lower": rational_value(lower), "upper": rational_value(upper) })
        }
    }
}

pub fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Found => "found",
        Outcome::None => "none",
        Outcome::BudgetExceeded => "budget-exceeded",
        Outcome::Cancelled => "cancelled",
    }
}

pub fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::First => "first",
        Mode::All => "all",
        Mode::Count => "count",
    }
}

/// `wall_time_ms` is only written when given, since it breaks byte
/// stability between runs.
pub fn search_result_to_json(query: &SearchQuery, r: &SearchResult, wall_time_ms: Option<u128>) -> Value {
    let mut obj = Map::new();
    obj.insert("target".into(), query.target.name().into());
    obj.insert("mode".into(), mode_name(query.mode).into());
    obj.insert("outcome".into(), outcome_name(r.outcome).into());
    obj.insert("allocations".into(), r.allocations.iter().map(allocation_to_json).collect());
    obj.insert("count".into(), big_count(r.count));
    obj.insert("weighted_count".into(), big_count(r.weighted_count));
    obj.insert("nodes_explored".into(), r.nodes_explored.into());
    obj.insert("budget".into(), query.budget.into());
    if let Some(ms) = wall_time_ms {
        obj.insert("wall_time_ms".into(), big_count(ms));
    }
    Value::Object(obj)
}

pub fn trace_to_json(t: &SolverTrace) -> Value {
    json!({ "rounds": t.choices.len(), "choices": t.choices, "swaps": t.swaps, "resets": t.resets })
}

pub fn class_report_to_json(c: &ClassReport) -> Value {
    let weights = c.generalized_binary.as_ref().map(|w| w.iter().map(rational_value).collect::<Vec<_>>());
    json!({
        "two_agents": c.two_agents,
        "two_types": c.two_types,
        "generalized_binary": weights,
        "single_peaked": c.single_peaked,
        "single_dipped": c.single_dipped,
        "identical_valuations": c.identical_valuations,
        "rounds_single_item": c.rounds_single_item,
        "two_rounds": c.two_rounds,
    })
}

pub fn formula_to_json(f: &CnfFormula) -> Value {
    json!({ "vars": f.n_vars(), "clauses": f.clauses() })
}

pub fn formula_from_json(v: &Value) -> Result<CnfFormula> {
    let obj = object(v, "formula")?;
    let vars = index(field(obj, "vars", "formula")?, "vars")?;
    let clauses = array(field(obj, "clauses", "formula")?, "clauses")?
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let path = format!("clauses[{j}]");
            let lits = array(c, &path)?;
            if lits.len() != 3 {
                return Err(bad(&path, format!("expected 3 literals, found {}", lits.len())));
            }
            let mut out = [0i32; 3];
            for (k, l) in lits.iter().enumerate() {
                out[k] = l
                    .as_i64()
                    .and_then(|x| i32::try_from(x).ok())
                    .ok_or_else(|| bad(&format!("{path}[{k}]"), "expected a nonzero integer literal"))?;
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    CnfFormula::new(vars, clauses)
}

pub fn multiset_to_json(m: &IntegerMultiset) -> Value {
    let mut obj = Map::new();
    obj.insert("values".into(), json!(m.values));
    if let Some(k) = m.kappa {
        obj.insert("kappa".into(), k.into());
    }
    Value::Object(obj)
}

pub fn multiset_from_json(v: &Value) -> Result<IntegerMultiset> {
    let obj = object(v, "multiset")?;
    let values = array(field(obj, "values", "multiset")?, "values")?
        .iter()
        .enumerate()
        .map(|(k, x)| {
            x.as_u64().filter(|&u| u > 0).ok_or_else(|| bad(&format!("values[{k}]"), "expected a positive integer"))
        })
        .collect::<Result<Vec<_>>>()?;
    let kappa = match obj.get("kappa") {
        None | Some(Value::Null) => None,
        Some(k) => Some(k.as_u64().filter(|&u| u > 0).ok_or_else(|| bad("kappa", "expected a positive integer"))?),
    };
    Ok(IntegerMultiset { values, kappa })
}

fn provenance_to_json(p: &Provenance, partial: Option<&Allocation>) -> Value {
    let source = match &p.source {
        Source::Formula(f) => json!({ "formula": formula_to_json(f) }),
        Source::Multiset(m) => json!({ "multiset": multiset_to_json(m) }),
    };
    let mut obj = Map::new();
    obj.insert("reduction".into(), p.reduction.into());
    obj.insert("source".into(), source);
    obj.insert("epsilon".into(), p.epsilon.as_ref().map_or(Value::Null, rational_value));
    obj.insert("notes".into(), json!(p.notes));
    if let Some(a) = partial {
        obj.insert("partial".into(), json!(a.assignment));
    }
    Value::Object(obj)
}
