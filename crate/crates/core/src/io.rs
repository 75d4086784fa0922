//! File formats: graphs, parameters and covariances as JSON, datasets as
//! comma-separated text with a header row, and a JSON printer that writes
//! every float with 17 significant digits.

use std::collections::{BTreeMap, HashSet};
use std::io::{Read, Write};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::constraints::{ConstraintSet, PlanTarget, RemovalPlan};
use crate::cov::CovMatrix;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::graph::{Admg, Edge};
use crate::sem::SemParameters;

fn json_err(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<String>,
    #[serde(default)]
    directed: Vec<[String; 2]>,
    #[serde(default)]
    bidirected: Vec<[String; 2]>,
}

pub fn parse_graph(text: &str) -> Result<Admg> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| json_err("graph", e))?;
    Admg::new(
        doc.vertices,
        doc.directed.into_iter().map(|[t, h]| (t, h)),
        doc.bidirected.into_iter().map(|[a, b]| (a, b)),
    )
}

pub fn graph_to_json(g: &Admg) -> Value {
    let pairs = |v: Vec<(String, String)>| -> Vec<[String; 2]> { v.into_iter().map(|(a, b)| [a, b]).collect() };
    serde_json::to_value(GraphDoc {
        vertices: g.vertices().to_vec(),
        directed: pairs(g.directed_edges()),
        bidirected: pairs(g.bidirected_edges()),
    })
    .expect("plain data serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsDoc {
    #[serde(default)]
    lambda: BTreeMap<String, f64>,
    #[serde(default)]
    omega: BTreeMap<String, f64>,
}

/// Reads parameters for `g`. Keys: `"a->b"` for coefficients, `"v"` for
/// error variances and `"u<->v"` (either order) for error covariances.
pub fn parse_params(text: &str, g: &Admg) -> Result<SemParameters> {
    let doc: ParamsDoc = serde_json::from_str(text).map_err(|e| json_err("parameters", e))?;
    let mut lambda = BTreeMap::new();
    for (k, x) in doc.lambda {
        let e: Edge = k.parse()?;
        if !e.is_directed() {
            return Err(Error::Parse(format!("lambda key `{k}` is not a directed edge")));
        }
        lambda.insert(e, x);
    }
    let mut variances = BTreeMap::new();
    let mut covariances = BTreeMap::new();
    for (k, x) in doc.omega {
        if k.contains("<->") {
            let e: Edge = k.parse()?;
            if covariances.insert(e.clone(), x).is_some() {
                return Err(Error::DuplicateEdge(e.to_string()));
            }
        } else if k.contains("->") {
            return Err(Error::Parse(format!("omega key `{k}` must be a vertex or a bidirected edge")));
        } else {
            variances.insert(k.trim().to_string(), x);
        }
    }
    SemParameters::new(g.clone(), &lambda, &variances, &covariances)
}

pub fn params_to_json(p: &SemParameters) -> Value {
    let mut lambda = Map::new();
    for (e, x) in p.lambda_map() {
        lambda.insert(e.to_string(), json!(x));
    }
    let mut omega = Map::new();
    for (v, x) in p.variance_map() {
        omega.insert(v, json!(x));
    }
    for (e, x) in p.covariance_map() {
        omega.insert(e.to_string(), json!(x));
    }
    json!({ "lambda": lambda, "omega": omega })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CovDoc {
    labels: Vec<String>,
    values: Vec<Vec<f64>>,
}

pub fn parse_cov(text: &str) -> Result<CovMatrix> {
    let doc: CovDoc = serde_json::from_str(text).map_err(|e| json_err("covariance", e))?;
    let n = doc.labels.len();
    if doc.values.len() != n || doc.values.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("covariance values must be a {n}x{n} array of rows")));
    }
    let m = DMatrix::from_fn(n, n, |i, j| doc.values[i][j]);
    CovMatrix::new(doc.labels, m)
}

pub fn cov_to_json(s: &CovMatrix) -> Value {
    let n = s.dim();
    let values: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| s.at(i, j)).collect()).collect();
    serde_json::to_value(CovDoc { labels: s.labels().to_vec(), values }).expect("plain data serializes")
}

pub fn constraints_to_json(cs: &ConstraintSet) -> Value {
    let steps: Vec<Value> = cs
        .plan
        .steps
        .iter()
        .map(|s| {
            json!({
                "edge": s.edge.to_string(),
                "kind": if s.edge.is_directed() { "directed" } else { "bidirected" },
            })
        })
        .collect();
    let pairs = |v: &[(String, String)]| -> Vec<[String; 2]> { v.iter().map(|(a, b)| [a.clone(), b.clone()]).collect() };
    json!({
        "target": serde_json::to_value(cs.plan.target).expect("enum serializes"),
        "plan": steps,
        "pairs": pairs(&cs.pairs),
        "trivial": pairs(&cs.trivial),
    })
}

#[derive(Deserialize)]
struct ConstraintDoc {
    target: PlanTarget,
    plan: Vec<StepDoc>,
    pairs: Vec<[String; 2]>,
    #[serde(default)]
    trivial: Vec<[String; 2]>,
}

#[derive(Deserialize)]
struct StepDoc {
    edge: String,
    #[allow(dead_code)]
    kind: Option<String>,
}

/// Reads a constraint set written by [`constraints_to_json`]; the plan is
/// re-validated against `g`.
pub fn parse_constraints(text: &str, g: &Admg) -> Result<ConstraintSet> {
    let doc: ConstraintDoc = serde_json::from_str(text).map_err(|e| json_err("constraints", e))?;
    let edges: Vec<Edge> = doc.plan.iter().map(|s| s.edge.parse()).collect::<Result<_>>()?;
    let plan = RemovalPlan::from_edges(g, &edges, doc.target)?;
    let pairs = |v: Vec<[String; 2]>| -> Result<Vec<(String, String)>> {
        v.into_iter()
            .map(|[a, b]| {
                g.index_of(&a)?;
                g.index_of(&b)?;
                Ok((a, b))
            })
            .collect()
    };
    Ok(ConstraintSet {
        plan,
        pairs: pairs(doc.pairs)?,
        trivial: pairs(doc.trivial)?,
    })
}

/// Reads comma-separated data with a header row of vertex labels.
pub fn read_dataset<R: Read>(reader: R) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let labels: Vec<String> = rdr
        .headers()
        .map_err(|e| Error::Parse(format!("dataset header: {e}")))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut seen = HashSet::new();
    for l in &labels {
        if l.is_empty() {
            return Err(Error::Parse("dataset header has an empty label".into()));
        }
        if !seen.insert(l) {
            return Err(Error::DuplicateVertex(l.clone()));
        }
    }
    let p = labels.len();
    let mut values = Vec::new();
    let mut n = 0;
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(format!("dataset row {}: {e}", k + 1)))?;
        if rec.len() != p {
            return Err(Error::Parse(format!("dataset row {} has {} fields, expected {p}", k + 1, rec.len())));
        }
        for (j, field) in rec.iter().enumerate() {
            let x: f64 = field
                .parse()
                .map_err(|_| Error::Parse(format!("dataset row {}, column {}: `{field}` is not a number", k + 1, labels[j])))?;
            values.push(x);
        }
        n += 1;
    }
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    Dataset::new(labels, DMatrix::from_row_slice(n, p, &values))
}

pub fn write_dataset<W: Write>(writer: W, d: &Dataset) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(d.labels()).map_err(io)?;
    for row in d.rows().row_iter() {
        w.write_record(row.iter().map(|x| format_float(*x))).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// 17 significant digits in scientific notation; round-trips every finite
/// double exactly.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Pretty-printed JSON with floats written by [`format_float`]. Non-finite
/// floats become `null`.
pub fn to_machine_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.push_str(&"  ".repeat(d));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().expect("f64 number");
                if x.is_finite() {
                    out.push_str(&format_float(x));
                } else {
                    out.push_str("null");
                }
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string serializes")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            let flat = items.iter().all(|x| !x.is_array() && !x.is_object());
            out.push('[');
            for (k, x) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                if flat {
                    if k > 0 {
                        out.push(' ');
                    }
                } else {
                    out.push('\n');
                    pad(out, depth + 1);
                }
                write_value(out, x, depth + 1);
            }
            if !flat {
                out.push('\n');
                pad(out, depth);
            }
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            for (k, (key, x)) in map.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                out.push('\n');
                pad(out, depth + 1);
                out.push_str(&serde_json::to_string(key).expect("string serializes"));
                out.push_str(": ");
                write_value(out, x, depth + 1);
            }
            out.push('\n');
            pad(out, depth);
            out.push('}');
        }
    }
}
