//! Command implementations behind the `semedge` binary. Every command reads
//! its inputs from files named in a [`RunConfig`], writes its primary
//! artifact to `--out` when given, and returns a report for stdout.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::Parser;
use serde_json::{json, Value};

use semedge_core::io::{
    constraints_to_json, cov_to_json, graph_to_json, params_to_json, parse_cov, parse_graph,
    parse_params, read_dataset, to_machine_json, write_dataset,
};
use semedge_core::{
    add_directed, bidirected_quantities_from_params, check_add_directed, check_remove_bidirected,
    check_remove_directed, derive_constraints, enumerate_treks, identify_path_sum_cutvertex, plan_removals,
    random_instance, remove_bidirected, remove_bidirected_forced, remove_directed, residual_of_plan, sample_cov,
    simulate, standardize, transform_data_add, transform_data_remove, trek_count, Admg, CovEstimator, CovMatrix,
    Dataset, Edge, Error, GraphSpec, IdentifiabilityReport, InterventionResult, Method, PlanTarget, SemParameters,
    Standardization,
};

pub mod args;
pub mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_IDENTIFIED: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;

/// Default relative threshold for constraint residuals.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Identify,
    Intervene,
    Transform,
    Constraints,
    Random,
    Cov,
    Treks,
    Simulate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Remove,
    Add,
    Path,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Machine,
    Table,
}

/// `Auto` standardizes in `transform` exactly when Σ is estimated from the
/// data being transformed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Standardize {
    Auto,
    On,
    Off,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub graph: Option<PathBuf>,
    pub params: Option<PathBuf>,
    pub sigma: Option<PathBuf>,
    pub data: Option<PathBuf>,
    pub edge: Option<String>,
    pub op: Op,
    pub lambda: Option<f64>,
    pub method: Method,
    pub tol: Option<f64>,
    pub seed: u64,
    pub n: Option<usize>,
    pub standardize: Standardize,
    pub oracle: bool,
    pub all_edges: bool,
    /// The two vertices of a `treks` query.
    pub pair: Option<(String, String)>,
    pub out: Option<PathBuf>,
    pub graph_out: Option<PathBuf>,
    pub params_out: Option<PathBuf>,
    pub format: Format,
    pub random: GraphSpec,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            graph: None,
            params: None,
            sigma: None,
            data: None,
            edge: None,
            op: Op::Remove,
            lambda: None,
            method: Method::Regression,
            tol: None,
            seed: 0,
            n: None,
            standardize: Standardize::Auto,
            oracle: false,
            all_edges: false,
            pair: None,
            out: None,
            graph_out: None,
            params_out: None,
            format: Format::Machine,
            random: GraphSpec::default(),
        }
    }
}

/// A mistake in how the command was invoked.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// What a command produced: text for stdout and whether the question it
/// answered came out negative.
#[derive(Debug)]
pub struct Report {
    pub stdout: String,
    pub not_identified: bool,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report { stdout, not_identified: false }
    }
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::NotIdentifiable(_) | Error::NoPlanFound { .. } => EXIT_NOT_IDENTIFIED,
                err if err.is_numerical() => EXIT_NUMERICAL,
                _ => EXIT_INVALID,
            };
        }
    }
    EXIT_INVALID
}

pub fn run(cfg: &RunConfig) -> Outcome {
    let result = match cfg.command {
        Command::Validate => cmd_validate(cfg),
        Command::Identify => cmd_identify(cfg),
        Command::Intervene => cmd_intervene(cfg),
        Command::Transform => cmd_transform(cfg),
        Command::Constraints => cmd_constraints(cfg),
        Command::Random => cmd_random(cfg),
        Command::Cov => cmd_cov(cfg),
        Command::Treks => cmd_treks(cfg),
        Command::Simulate => cmd_simulate(cfg),
    };
    match result {
        Ok(r) if r.not_identified => Outcome {
            code: EXIT_NOT_IDENTIFIED,
            stdout: r.stdout,
            stderr: String::new(),
        },
        Ok(r) => Outcome {
            code: EXIT_OK,
            stdout: r.stdout,
            stderr: String::new(),
        },
        Err(e) => {
            let mut stdout = String::new();
            if let Some(Error::NotIdentifiable(report)) = e.chain().find_map(|c| c.downcast_ref::<Error>()) {
                stdout = render_report(cfg, report);
            }
            Outcome {
                code: exit_code(&e),
                stdout,
                stderr: format!("error: {e:#}\n"),
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match args::Cli::try_parse_from(args) {
        Ok(cli) => run(&RunConfig::from(cli)),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| anyhow!(Error::Io(e))).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).map_err(|e| anyhow!(Error::Io(e))).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(cfg: &RunConfig) -> anyhow::Result<Admg> {
    let path = cfg.graph.as_deref().ok_or_else(|| usage("--graph is required"))?;
    parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_params(path: &Path, g: &Admg) -> anyhow::Result<SemParameters> {
    parse_params(&read(path)?, g).with_context(|| format!("in {}", path.display()))
}

fn load_sigma(path: &Path) -> anyhow::Result<CovMatrix> {
    parse_cov(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_data(path: &Path) -> anyhow::Result<Dataset> {
    let f = fs::File::open(path).map_err(|e| anyhow!(Error::Io(e))).with_context(|| format!("reading {}", path.display()))?;
    read_dataset(f).with_context(|| format!("in {}", path.display()))
}

fn load_edge(cfg: &RunConfig) -> anyhow::Result<Edge> {
    let s = cfg.edge.as_deref().ok_or_else(|| usage("--edge is required"))?;
    Ok(s.parse::<Edge>()?)
}

/// Σ from exactly one of --params, --sigma or --data, with labels checked
/// against the graph.
fn covariance(cfg: &RunConfig, g: &Admg) -> anyhow::Result<CovMatrix> {
    let given = [cfg.params.is_some(), cfg.sigma.is_some(), cfg.data.is_some()];
    match given.iter().filter(|&&x| x).count() {
        0 => return Err(usage("a covariance source is required: one of --params, --sigma, --data")),
        1 => {}
        _ => return Err(usage("give exactly one of --params, --sigma, --data")),
    }
    let s = if let Some(p) = &cfg.params {
        load_params(p, g)?.covariance()?
    } else if let Some(p) = &cfg.sigma {
        load_sigma(p)?
    } else {
        let d = load_data(cfg.data.as_deref().expect("counted"))?;
        sample_cov(&d, CovEstimator::Centered)?
    };
    s.check_labels(g.vertices())?;
    Ok(s.reordered(g.vertices())?)
}

fn emit(cfg: &RunConfig, machine: &Value, table: String) -> String {
    match cfg.format {
        Format::Machine => to_machine_json(machine),
        Format::Table => table,
    }
}

fn render_report(cfg: &RunConfig, r: &IdentifiabilityReport) -> String {
    emit(cfg, &serde_json::to_value(r).expect("report serializes"), render::report(r))
}

pub fn cmd_validate(cfg: &RunConfig) -> anyhow::Result<Report> {
    let g = load_graph(cfg)?;
    let mut doc = json!({
        "ok": true,
        "vertices": g.len(),
        "directed": g.num_directed(),
        "bidirected": g.num_bidirected(),
        "simple": g.is_simple(),
    });
    let mut lines = vec![format!(
        "OK: {} vertices, {} directed, {} bidirected",
        g.len(),
        g.num_directed(),
        g.num_bidirected()
    )];
    if let Some(p) = &cfg.params {
        let params = load_params(p, &g)?;
        let s = params.covariance()?;
        doc["params"] = json!({ "sigma_min_eigenvalue": s.min_eigenvalue() });
        lines.push(format!("parameters OK, Sigma min eigenvalue {}", render::num(s.min_eigenvalue())));
    }
    if let Some(p) = &cfg.sigma {
        let s = load_sigma(p)?;
        s.check_labels(g.vertices())?;
        let pd = s.is_positive_definite();
        doc["sigma"] = json!({ "positive_definite": pd, "min_eigenvalue": s.min_eigenvalue() });
        lines.push(format!(
            "Sigma OK, positive definite: {pd}, min eigenvalue {}",
            render::num(s.min_eigenvalue())
        ));
    }
    if let Some(p) = &cfg.data {
        let d = load_data(p)?;
        d.reordered(g.vertices())?;
        doc["data"] = json!({ "rows": d.n() });
        lines.push(format!("data OK, {} rows", d.n()));
    }
    Ok(Report::ok(emit(cfg, &doc, lines.join("\n") + "\n")))
}

pub fn cmd_identify(cfg: &RunConfig) -> anyhow::Result<Report> {
    let g = load_graph(cfg)?;
    let edge = load_edge(cfg)?;
    let report = match (cfg.op, &edge) {
        (Op::Remove, Edge::Directed { tail, head }) => check_remove_directed(&g, tail, head, cfg.method)?,
        (Op::Remove, Edge::Bidirected(a, b)) => check_remove_bidirected(&g, a, b)?,
        (Op::Add, Edge::Directed { tail, head }) => check_add_directed(&g, tail, head, cfg.method)?,
        (Op::Path, Edge::Directed { tail, head }) => identify_path_sum_cutvertex(&g, tail, head)?,
        (Op::Add, Edge::Bidirected(..)) => return Err(usage("adding bidirected edges is not supported")),
        (Op::Path, Edge::Bidirected(..)) => return Err(usage("a path query takes a directed pair `b->c`")),
    };
    Ok(Report {
        stdout: render_report(cfg, &report),
        not_identified: !report.is_identified(),
    })
}

fn used_json(r: &InterventionResult) -> Value {
    serde_json::to_value(&r.used).expect("plain data serializes")
}

pub fn cmd_intervene(cfg: &RunConfig) -> anyhow::Result<Report> {
    let g = load_graph(cfg)?;
    let edge = load_edge(cfg)?;
    let (operation, result) = match (cfg.op, &edge) {
        (Op::Remove, Edge::Directed { tail, head }) => {
            let s = covariance(cfg, &g)?;
            ("remove", remove_directed(&s, &g, tail, head, cfg.method)?)
        }
        (Op::Add, Edge::Directed { tail, head }) => {
            let lam = cfg.lambda.ok_or_else(|| usage("--lambda is required to add an edge"))?;
            let s = covariance(cfg, &g)?;
            ("add", add_directed(&s, &g, tail, head, lam, cfg.method)?)
        }
        (Op::Remove, Edge::Bidirected(a, b)) if cfg.oracle => {
            let path = cfg.params.as_deref().ok_or_else(|| usage("--oracle needs --params"))?;
            if cfg.sigma.is_some() || cfg.data.is_some() {
                return Err(usage("--oracle takes Sigma from --params only"));
            }
            let p = load_params(path, &g)?;
            let q = bidirected_quantities_from_params(&p, a, b)?;
            ("remove", remove_bidirected_forced(&p.covariance()?, &g, &q)?)
        }
        (Op::Remove, Edge::Bidirected(a, b)) => {
            let s = covariance(cfg, &g)?;
            ("remove", remove_bidirected(&s, &g, a, b)?)
        }
        (Op::Add, Edge::Bidirected(..)) => return Err(usage("adding bidirected edges is not supported")),
        (Op::Path, _) => return Err(usage("--op path is only valid for identify")),
    };
    if let Some(p) = &cfg.out {
        write(p, &to_machine_json(&cov_to_json(&result.new_cov)))?;
    }
    if let Some(p) = &cfg.graph_out {
        write(p, &to_machine_json(&graph_to_json(&result.new_graph)))?;
    }
    let doc = json!({
        "operation": operation,
        "edge": edge.to_string(),
        "graph": graph_to_json(&result.new_graph),
        "sigma": cov_to_json(&result.new_cov),
        "used": used_json(&result),
        "pd_check": serde_json::to_value(result.pd_check).expect("plain data serializes"),
        "report": result.report.as_ref().map(|r| serde_json::to_value(r).expect("report serializes")),
    });
    let mut table = format!("{operation} {edge}\n\nused quantities\n{}", render::used(&result.used));
    table.push_str(&format!("\nSigma*\n{}", render::matrix(&result.new_cov)));
    table.push_str(&format!(
        "\npositive definite: {} (min eigenvalue {})\n",
        result.pd_check.passed,
        render::num(result.pd_check.min_eigenvalue)
    ));
    Ok(Report::ok(emit(cfg, &doc, table)))
}

fn scaled_to(s: &CovMatrix, st: &Standardization) -> anyhow::Result<CovMatrix> {
    let s = s.reordered(&st.labels)?;
    let n = st.labels.len();
    let mut m = s.matrix().clone();
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] /= st.sds[i] * st.sds[j];
        }
    }
    for i in 0..n {
        for j in 0..i {
            m[(i, j)] = m[(j, i)];
        }
    }
    Ok(CovMatrix::new(st.labels.clone(), m)?)
}

pub fn cmd_transform(cfg: &RunConfig) -> anyhow::Result<Report> {
    let g = load_graph(cfg)?;
    let edge = load_edge(cfg)?;
    let data_path = cfg.data.as_deref().ok_or_else(|| usage("--data is required"))?;
    if cfg.params.is_some() && cfg.sigma.is_some() {
        return Err(usage("give at most one of --params, --sigma"));
    }
    let d = load_data(data_path)?;
    d.reordered(g.vertices())?;
    let external = if let Some(p) = &cfg.params {
        Some(load_params(p, &g)?.covariance()?)
    } else if let Some(p) = &cfg.sigma {
        Some(load_sigma(p)?)
    } else {
        None
    };
    let on = match cfg.standardize {
        Standardize::On => true,
        Standardize::Off => false,
        Standardize::Auto => external.is_none(),
    };
    let (work, st) = if on {
        let (z, st) = standardize(&d)?;
        (z, Some(st))
    } else {
        (d.clone(), None)
    };
    let s = match (&external, &st) {
        (Some(s), Some(st)) => scaled_to(s, st)?,
        (Some(s), None) => s.clone(),
        (None, _) => sample_cov(&work, CovEstimator::Centered)?,
    };
    s.check_labels(g.vertices())?;
    let (operation, moved) = match (cfg.op, &edge) {
        (Op::Remove, Edge::Directed { tail, head }) => {
            ("remove", transform_data_remove(&work, &s, &g, tail, head, cfg.method)?)
        }
        (Op::Add, Edge::Directed { tail, head }) => {
            let lam = cfg.lambda.ok_or_else(|| usage("--lambda is required to add an edge"))?;
            ("add", transform_data_add(&work, &s, &g, tail, head, lam, cfg.method)?)
        }
        (_, Edge::Bidirected(..)) => return Err(usage("data transforms exist only for directed edges")),
        (Op::Path, _) => return Err(usage("--op path is only valid for identify")),
    };
    let out = match &st {
        Some(st) => st.invert(&moved)?,
        None => moved,
    };
    let mut csv = Vec::new();
    write_dataset(&mut csv, &out)?;
    let csv = String::from_utf8(csv).expect("csv output is utf-8");
    let Some(path) = &cfg.out else {
        return Ok(Report::ok(csv));
    };
    write(path, &csv)?;
    let doc = json!({
        "operation": operation,
        "edge": edge.to_string(),
        "rows": out.n(),
        "standardized": on,
        "standardization": st.as_ref().map(|s| serde_json::to_value(s).expect("plain data serializes")),
        "output": path.display().to_string(),
    });
    let mut table = format!("{operation} {edge}: {} rows written to {}\n", out.n(), path.display());
    if let Some(st) = &st {
        let rows: Vec<Vec<String>> = st
            .labels
            .iter()
            .zip(st.means.iter().zip(&st.sds))
            .map(|(l, (m, s))| vec![l.clone(), render::num(*m), render::num(*s)])
            .collect();
        table.push_str(&format!("standardized with\n{}", render::columns(&["vertex", "mean", "sd"], &rows)));
    }
    Ok(Report::ok(emit(cfg, &doc, table)))
}

pub fn cmd_constraints(cfg: &RunConfig) -> anyhow::Result<Report> {
    let g = load_graph(cfg)?;
    let target = if cfg.all_edges { PlanTarget::AllEdges } else { PlanTarget::DirectedOnly };
    let plan = plan_removals(&g, target)?;
    let cs = derive_constraints(&g, &plan)?;
    if let Some(p) = &cfg.out {
        write(p, &to_machine_json(&constraints_to_json(&cs)))?;
    }
    let mut doc = constraints_to_json(&cs);
    let plan_text: Vec<String> = plan.edges().iter().map(Edge::to_string).collect();
    let pair_text: Vec<String> = cs.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
    let mut table = format!(
        "plan: {}\nconstrained pairs: {}\n",
        if plan_text.is_empty() { "(nothing to remove)".into() } else { plan_text.join(", ") },
        if pair_text.is_empty() { "none".into() } else { pair_text.join(", ") },
    );
    let any_source = cfg.params.is_some() || cfg.sigma.is_some() || cfg.data.is_some();
    if any_source {
        let tol = cfg.tol.unwrap_or(DEFAULT_RESIDUAL_TOL);
        let s = covariance(cfg, &g)?;
        let res = residual_of_plan(&g, &s, &cs)?;
        let mut rows = Vec::new();
        let mut items = Vec::new();
        for r in &res {
            let pass = r.relative() <= tol;
            items.push(json!({
                "pair": [r.pair.0, r.pair.1],
                "value": r.value,
                "relative": r.relative(),
                "pass": pass,
            }));
            rows.push(vec![
                format!("({},{})", r.pair.0, r.pair.1),
                format!("{:.4e}", r.value),
                format!("{:.4e}", r.relative()),
                if pass { "ok".into() } else { "violated".into() },
            ]);
        }
        doc["tolerance"] = json!(tol);
        doc["residuals"] = Value::Array(items);
        table.push_str(&format!("\n{}", render::columns(&["pair", "residual", "relative", "status"], &rows)));
    }
    Ok(Report::ok(emit(cfg, &doc, table)))
}

pub fn cmd_random(cfg: &RunConfig) -> anyhow::Result<Report> {
    let spec = cfg.random;
    if !(0.0..=1.0).contains(&spec.p_directed) || !(0.0..=1.0).contains(&spec.p_bidirected) {
        return Err(usage("edge probabilities must lie in [0, 1]"));
    }
    let p = random_instance(&spec, cfg.seed)?;
    let graph = graph_to_json(p.graph());
    let params = params_to_json(&p);
    if let Some(path) = &cfg.out {
        write(path, &to_machine_json(&graph))?;
    }
    if let Some(path) = &cfg.params_out {
        write(path, &to_machine_json(&params))?;
    }
    let doc = json!({ "graph": graph, "params": params });
    let g = p.graph();
    let mut table = format!(
        "{} vertices, {} directed, {} bidirected (seed {})\n",
        g.len(),
        g.num_directed(),
        g.num_bidirected(),
        cfg.seed
    );
    let mut rows: Vec<Vec<String>> = p
        .lambda_map()
        .iter()
        .map(|(e, x)| vec![e.to_string(), render::num(*x)])
        .collect();
    rows.extend(p.variance_map().iter().map(|(v, x)| vec![v.clone(), render::num(*x)]));
    rows.extend(p.covariance_map().iter().map(|(e, x)| vec![e.to_string(), render::num(*x)]));
    table.push_str(&render::columns(&["parameter", "value"], &rows));
    Ok(Report::ok(emit(cfg, &doc, table)))
}

pub fn cmd_cov(cfg: &RunConfig) -> anyhow::Result<Report> {
    let g = load_graph(cfg)?;
    let path = cfg.params.as_deref().ok_or_else(|| usage("--params is required"))?;
    let s = load_params(path, &g)?.covariance()?;
    let doc = cov_to_json(&s);
    if let Some(p) = &cfg.out {
        write(p, &to_machine_json(&doc))?;
    }
    Ok(Report::ok(emit(cfg, &doc, render::matrix(&s))))
}

pub fn cmd_treks(cfg: &RunConfig) -> anyhow::Result<Report> {
    let g = load_graph(cfg)?;
    let (v, w) = cfg.pair.as_ref().ok_or_else(|| usage("treks needs two vertices"))?;
    let count = trek_count(&g, v, w)?;
    let treks = enumerate_treks(&g, v, w)?;
    let params = match &cfg.params {
        Some(p) => Some(load_params(p, &g)?),
        None => None,
    };
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut total = 0.0;
    for t in &treks {
        let mut item = json!({ "trek": t.to_string() });
        let mut row = vec![t.to_string()];
        if let Some(p) = &params {
            let m = t.monomial(p)?;
            total += m;
            item["monomial"] = json!(m);
            row.push(render::num(m));
        }
        items.push(item);
        rows.push(row);
    }
    let mut doc = json!({ "from": v, "to": w, "count": count, "treks": items });
    let header: &[&str] = if params.is_some() { &["trek", "monomial"] } else { &["trek"] };
    let mut table = format!("{} treks between {v} and {w}\n", treks.len());
    table.push_str(&render::columns(header, &rows));
    if let Some(p) = &params {
        let sigma = p.covariance()?.get(v, w)?;
        doc["sum"] = json!(total);
        doc["sigma"] = json!(sigma);
        table.push_str(&format!("sum {}  (Sigma entry {})\n", render::num(total), render::num(sigma)));
    }
    Ok(Report::ok(emit(cfg, &doc, table)))
}

pub fn cmd_simulate(cfg: &RunConfig) -> anyhow::Result<Report> {
    let n = cfg.n.ok_or_else(|| usage("--n is required"))?;
    let s = match (&cfg.graph, &cfg.sigma) {
        (None, Some(p)) if cfg.params.is_none() && cfg.data.is_none() => load_sigma(p)?,
        _ => covariance(cfg, &load_graph(cfg)?)?,
    };
    let d = simulate(&s, n, cfg.seed)?;
    let mut csv = Vec::new();
    write_dataset(&mut csv, &d)?;
    let csv = String::from_utf8(csv).expect("csv output is utf-8");
    match &cfg.out {
        Some(p) => {
            write(p, &csv)?;
            let doc = json!({ "rows": n, "seed": cfg.seed, "output": p.display().to_string() });
            let table = format!("{n} rows written to {} (seed {})\n", p.display(), cfg.seed);
            Ok(Report::ok(emit(cfg, &doc, table)))
        }
        None => Ok(Report::ok(csv)),
    }
}
