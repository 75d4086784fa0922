//! Graphical criteria deciding when edge coefficients, directed path sums
//! and error covariances equal a single regression on Σ, and the composite
//! checks that gate each kind of edge intervention.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cov::CovMatrix;
use crate::error::{Error, Result};
use crate::graph::{Admg, Edge, VertexSet};

/// What a report is about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// λ of the directed edge `from -> to`.
    EdgeCoefficient { from: String, to: String },
    /// Sum over directed paths from `from` to `to`.
    PathSum { from: String, to: String },
    /// ω of `a <-> b`, with `a` the endpoint that is not a descendant of `b`.
    BidirectedCoefficient { a: String, b: String },
    /// The covariance after an edge intervention.
    InterventionalCovariance { operation: Operation, edge: String },
    /// All parameters of the model.
    Model,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    RemoveDirected,
    AddDirected,
    RemoveBidirected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    RegressionIdentifiable,
    GenericallyIdentifiable,
    NotIdentifiedByTheseMethods,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::RegressionIdentifiable => "regression-identifiable",
            Status::GenericallyIdentifiable => "generically-identifiable",
            Status::NotIdentifiedByTheseMethods => "not-identified-by-these-methods",
            Status::Unknown => "unknown",
        }
    }
}

/// How path sums are identified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// A single regression per path sum.
    #[default]
    Regression,
    /// A single regression if possible, else a product of regressions
    /// through cut vertices.
    Cutvertex,
}

/// One regression `β_{from,to·adjustment}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionStep {
    pub from: String,
    pub to: String,
    pub adjustment: VertexSet,
}

/// A named graphical condition and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        Check { name: name.into(), passed, detail }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentifiabilityReport {
    pub target: Target,
    pub status: Status,
    /// Present exactly when a single regression identifies the target.
    pub adjustment: Option<VertexSet>,
    /// Chained regressions whose product identifies a path sum.
    pub recipe: Option<Vec<RegressionStep>>,
    pub reason: Option<String>,
    /// Sub-reports for composite targets.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<IdentifiabilityReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

impl IdentifiabilityReport {
    fn success(target: Target, adjustment: VertexSet) -> Self {
        IdentifiabilityReport {
            target,
            status: Status::RegressionIdentifiable,
            adjustment: Some(adjustment),
            recipe: None,
            reason: None,
            parts: Vec::new(),
            checks: Vec::new(),
        }
    }

    fn failure(target: Target, reason: String) -> Self {
        IdentifiabilityReport {
            target,
            status: Status::NotIdentifiedByTheseMethods,
            adjustment: None,
            recipe: None,
            reason: Some(reason),
            parts: Vec::new(),
            checks: Vec::new(),
        }
    }

    fn with_checks(mut self, checks: Vec<Check>) -> Self {
        self.checks = checks;
        self
    }

    pub fn is_identified(&self) -> bool {
        matches!(
            self.status,
            Status::RegressionIdentifiable | Status::GenericallyIdentifiable
        )
    }

    /// One-line description used in error messages.
    pub fn summary(&self) -> String {
        let mut s = format!("{}: {}", self.target, self.status.as_str());
        if let Some(adj) = &self.adjustment {
            s.push_str(&format!(", adjustment {adj}"));
        }
        if let Some(r) = &self.reason {
            s.push_str(&format!(" ({r})"));
        }
        s
    }

    /// Evaluates an identified λ, path sum or ω on `s` using the reported
    /// adjustment set or recipe.
    pub fn evaluate(&self, s: &CovMatrix) -> Result<f64> {
        if !self.is_identified() {
            return Err(Error::NotIdentifiable(Box::new(self.clone())));
        }
        match (&self.target, &self.adjustment, &self.recipe) {
            (Target::EdgeCoefficient { from, to }, Some(adj), _)
            | (Target::PathSum { from, to }, Some(adj), _) => s.regression_coef(from, to, adj),
            (Target::PathSum { .. }, None, Some(steps)) => steps.iter().try_fold(1.0, |acc, st| {
                Ok(acc * s.regression_coef(&st.from, &st.to, &st.adjustment)?)
            }),
            (Target::BidirectedCoefficient { a, b }, Some(adj), _) => s.conditional_cov(a, b, adj),
            _ => Err(Error::InvalidParameters(format!("{} has no single value", self.target))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::EdgeCoefficient { from, to } => write!(f, "lambda[{from}->{to}]"),
            Target::PathSum { from, to } => write!(f, "pathsum[{from}->{to}]"),
            Target::BidirectedCoefficient { a, b } => write!(f, "omega[{a}<->{b}]"),
            Target::InterventionalCovariance { operation, edge } => {
                let op = match operation {
                    Operation::RemoveDirected | Operation::RemoveBidirected => "remove",
                    Operation::AddDirected => "add",
                };
                write!(f, "Sigma*[{op} {edge}]")
            }
            Target::Model => write!(f, "model"),
        }
    }
}

fn witness(g: &Admg, a: &[bool], b: &[bool], skip: usize) -> Option<usize> {
    (0..g.len()).find(|&i| i != skip && a[i] && b[i])
}

/// Decides whether `λ_ab` is a single regression coefficient.
///
/// Identifiable iff `a` is outside the district of `b` in `G_an(b)` and `a`
/// has no edge into another member of that district. The adjustment set is
/// the Markov blanket of `b` in `G_an(b)` without `a`.
pub fn identify_lambda(g: &Admg, a: &str, b: &str) -> Result<IdentifiabilityReport> {
    let e = Edge::directed(a, b);
    if !g.has_edge(&e) {
        return Err(Error::NoSuchEdge(e.to_string()));
    }
    let (ai, bi) = (g.index_of(a)?, g.index_of(b)?);
    let target = Target::EdgeCoefficient { from: a.into(), to: b.into() };
    let w = g.an_in(&[bi], &g.full_mask());
    let dis = g.dis_in(bi, &w);

    let in_district = dis[ai];
    let into_district = (0..g.len()).find(|&d| d != bi && dis[d] && g.has_directed_idx(ai, d));
    let checks = vec![
        Check::new(
            "a outside district of b in G_an(b)",
            !in_district,
            in_district.then(|| format!("{a} in dis({b}) = {}", g.mask_to_set(&dis))),
        ),
        Check::new(
            "no edge from a into district of b in G_an(b)",
            into_district.is_none(),
            into_district.map(|d| format!("edge {a}->{}", g.label(d))),
        ),
    ];
    if in_district {
        let reason = format!("{a} lies in the district of {b} within an({b})");
        return Ok(IdentifiabilityReport::failure(target, reason).with_checks(checks));
    }
    if let Some(d) = into_district {
        let reason = format!("edge {a}->{} points into the district of {b} within an({b})", g.label(d));
        return Ok(IdentifiabilityReport::failure(target, reason).with_checks(checks));
    }
    let mut mb = g.mb_in(bi, &w);
    mb[ai] = false;
    Ok(IdentifiabilityReport::success(target, g.mask_to_set(&mb)).with_checks(checks))
}

fn proper_descendant(g: &Admg, b: usize, c: usize) -> Result<()> {
    if b == c || !g.de_in(&[b], &g.full_mask())[c] {
        return Err(Error::NotADescendant {
            from: g.label(b).to_string(),
            to: g.label(c).to_string(),
        });
    }
    Ok(())
}

fn path_sum_idx(g: &Admg, b: usize, c: usize) -> IdentifiabilityReport {
    let target = Target::PathSum {
        from: g.label(b).into(),
        to: g.label(c).into(),
    };
    let w = g.an_in(&[c], &g.full_mask());
    if g.fixable_in(b, &w) {
        let check = Check::new("b fixable in G_an(c)", true, None);
        return IdentifiabilityReport::success(target, g.mask_to_set(&g.mb_in(b, &w))).with_checks(vec![check]);
    }
    let de = g.de_in(&[b], &w);
    let dis = g.dis_in(b, &w);
    let d = witness(g, &de, &dis, b).expect("not fixable means a witness exists");
    let (bl, cl, dl) = (g.label(b), g.label(c), g.label(d));
    let detail = format!("{dl} in de({bl}) and dis({bl}) within an({cl})");
    let reason = format!("b not fixable in G_an({cl}): {detail}");
    IdentifiabilityReport::failure(target, reason)
        .with_checks(vec![Check::new("b fixable in G_an(c)", false, Some(detail))])
}

/// Decides whether the path sum from `b` to `c` is a single regression
/// coefficient: iff `b` is fixable in `G_an(c)`, with adjustment set the
/// Markov blanket of `b` there.
pub fn identify_path_sum(g: &Admg, b: &str, c: &str) -> Result<IdentifiabilityReport> {
    let (bi, ci) = (g.index_of(b)?, g.index_of(c)?);
    proper_descendant(g, bi, ci)?;
    Ok(path_sum_idx(g, bi, ci))
}

/// Like [`identify_path_sum`], but when a single regression fails, searches
/// depth first (cut vertices in topological order) for a chain
/// `b = v0, v1, ..., c` through cut vertices whose consecutive path sums are
/// each single regressions.
pub fn identify_path_sum_cutvertex(g: &Admg, b: &str, c: &str) -> Result<IdentifiabilityReport> {
    let (bi, ci) = (g.index_of(b)?, g.index_of(c)?);
    proper_descendant(g, bi, ci)?;
    Ok(path_sum_cutvertex_idx(g, bi, ci))
}

fn path_sum_cutvertex_idx(g: &Admg, bi: usize, ci: usize) -> IdentifiabilityReport {
    let direct = path_sum_idx(g, bi, ci);
    if direct.is_identified() {
        let step = RegressionStep {
            from: g.label(bi).into(),
            to: g.label(ci).into(),
            adjustment: direct.adjustment.clone().expect("success has adjustment"),
        };
        let mut r = direct;
        r.recipe = Some(vec![step]);
        return r;
    }
    let cuts = g.cut_vertices_idx(bi, ci).expect("c is a descendant of b");
    let mut chain = Vec::new();
    if chain_search(g, bi, ci, &cuts, &mut chain) {
        let recipe: Vec<RegressionStep> = chain
            .into_iter()
            .map(|r: IdentifiabilityReport| {
                let Target::PathSum { from, to } = r.target else { unreachable!() };
                RegressionStep { from, to, adjustment: r.adjustment.expect("success has adjustment") }
            })
            .collect();
        let via: Vec<&str> = recipe.iter().skip(1).map(|s| s.from.as_str()).collect();
        let check = Check::new("chain through cut vertices", true, Some(format!("via {}", via.join(","))));
        return IdentifiabilityReport {
            target: direct.target,
            status: Status::GenericallyIdentifiable,
            adjustment: None,
            recipe: Some(recipe),
            reason: None,
            parts: Vec::new(),
            checks: direct.checks.into_iter().chain(std::iter::once(check)).collect(),
        };
    }
    let cut_labels: Vec<&str> = cuts.iter().map(|&u| g.label(u)).collect();
    let mut r = direct;
    r.reason = Some(format!(
        "{}; no chain through cut vertices {{{}}}",
        r.reason.take().unwrap_or_default(),
        cut_labels.join(",")
    ));
    r.checks.push(Check::new("chain through cut vertices", false, None));
    r
}

fn chain_search(g: &Admg, cur: usize, c: usize, cuts: &[usize], chain: &mut Vec<IdentifiabilityReport>) -> bool {
    let last = path_sum_idx(g, cur, c);
    if last.is_identified() {
        chain.push(last);
        return true;
    }
    let start = cuts.iter().position(|&u| u == cur).map_or(0, |p| p + 1);
    for &u in &cuts[start..] {
        let step = path_sum_idx(g, cur, u);
        if !step.is_identified() {
            continue;
        }
        chain.push(step);
        if chain_search(g, u, c, cuts, chain) {
            return true;
        }
        chain.pop();
    }
    false
}

/// Orders the endpoints of a bidirected edge so the first is not a
/// descendant of the second; when neither is a descendant of the other the
/// topologically earlier one comes first.
pub(crate) fn orient_bidirected(g: &Admg, a: usize, b: usize) -> (usize, usize) {
    let full = g.full_mask();
    if g.de_in(&[a], &full)[b] {
        return (a, b);
    }
    if g.de_in(&[b], &full)[a] {
        return (b, a);
    }
    let pos = |v: usize| g.topo_idx().iter().position(|&x| x == v).expect("vertex in order");
    if pos(a) < pos(b) {
        (a, b)
    } else {
        (b, a)
    }
}

fn bidirected_edge(g: &Admg, a: &str, b: &str) -> Result<(usize, usize)> {
    let e = Edge::bidirected(a, b);
    if a == b || !g.has_edge(&e) {
        return Err(Error::NoSuchEdge(e.to_string()));
    }
    Ok(orient_bidirected(g, g.index_of(a)?, g.index_of(b)?))
}

/// Decides whether `ω_ab` is a single partial covariance.
///
/// With `a*` the endpoint not descending from `b`: identifiable when `a*`
/// and `b` are both fixable and `a*` is outside the Markov blanket of `b` in
/// the graph without the edge, restricted to `an({a*, b})`. Then
/// `ω = σ_{a*b·ξ}` with `ξ` that Markov blanket.
pub fn identify_omega(g: &Admg, a: &str, b: &str) -> Result<IdentifiabilityReport> {
    let (ai, bi) = bidirected_edge(g, a, b)?;
    Ok(omega_idx(g, ai, bi))
}

fn fixable_check(g: &Admg, name: &str, v: usize) -> Check {
    let full = g.full_mask();
    let ok = g.fixable_in(v, &full);
    let detail = (!ok).then(|| {
        let d = witness(g, &g.de_in(&[v], &full), &g.dis_in(v, &full), v).expect("witness");
        format!("{} in de({}) and dis({})", g.label(d), g.label(v), g.label(v))
    });
    Check::new(name, ok, detail)
}

fn omega_idx(g: &Admg, ai: usize, bi: usize) -> IdentifiabilityReport {
    let (al, bl) = (g.label(ai), g.label(bi));
    let target = Target::BidirectedCoefficient { a: al.into(), b: bl.into() };
    let star = g.without_edge(&Edge::bidirected(al, bl)).expect("edge exists");
    let w = g.an_in(&[ai, bi], &g.full_mask());
    let xi = star.mb_in(bi, &w);
    let checks = vec![
        fixable_check(g, "a* fixable", ai),
        fixable_check(g, "b fixable", bi),
        Check::new(
            "a* outside mb(b) in G*_an({a*,b})",
            !xi[ai],
            xi[ai].then(|| format!("mb({bl}) = {}", star.mask_to_set(&xi))),
        ),
    ];
    if let Some(failed) = checks.iter().find(|c| !c.passed) {
        let reason = match failed.name.as_str() {
            "a* fixable" => format!("a* not fixable: {}", failed.detail.as_deref().unwrap_or("")),
            "b fixable" => format!("b not fixable: {}", failed.detail.as_deref().unwrap_or("")),
            _ => format!(
                "{al} remains in the Markov blanket of {bl} after removing the edge: {}",
                failed.detail.as_deref().unwrap_or("")
            ),
        };
        return IdentifiabilityReport::failure(target, reason).with_checks(checks);
    }
    IdentifiabilityReport::success(target, star.mask_to_set(&xi)).with_checks(checks)
}

fn path_part(g: &Admg, b: usize, c: usize, method: Method) -> IdentifiabilityReport {
    match method {
        Method::Regression => path_sum_idx(g, b, c),
        Method::Cutvertex => path_sum_cutvertex_idx(g, b, c),
    }
}

/// Proper descendants of `v` in topological order.
fn proper_descendants(g: &Admg, v: usize) -> Vec<usize> {
    let de = g.de_in(&[v], &g.full_mask());
    g.topo_idx().iter().copied().filter(|&c| c != v && de[c]).collect()
}

fn composite(target: Target, parts: Vec<IdentifiabilityReport>, checks: Vec<Check>) -> IdentifiabilityReport {
    let failed = parts.iter().find(|p| !p.is_identified());
    let (status, reason) = match failed {
        Some(p) => (
            Status::NotIdentifiedByTheseMethods,
            Some(format!("{}: {}", p.target, p.reason.as_deref().unwrap_or("not identified"))),
        ),
        None if parts.iter().all(|p| p.status == Status::RegressionIdentifiable) => {
            (Status::RegressionIdentifiable, None)
        }
        None => (Status::GenericallyIdentifiable, None),
    };
    IdentifiabilityReport {
        target,
        status,
        adjustment: None,
        recipe: None,
        reason,
        parts,
        checks,
    }
}

/// Whether the covariance after removing `a -> b` is identified from Σ: the
/// edge coefficient and every path sum from `b` to its proper descendants.
pub fn check_remove_directed(g: &Admg, a: &str, b: &str, method: Method) -> Result<IdentifiabilityReport> {
    let lambda = identify_lambda(g, a, b)?;
    let (ai, bi) = (g.index_of(a)?, g.index_of(b)?);
    let star = g.without_edge(&Edge::directed(a, b))?;
    let w = g.an_in(&[bi], &g.full_mask());
    let mb = star.mb_in(bi, &w);
    let mut parts = vec![lambda];
    for c in proper_descendants(g, bi) {
        parts.push(path_part(g, bi, c, method));
    }
    let checks = vec![
        Check::new(
            "a outside mb(b) in G*_an(b)",
            !mb[ai],
            mb[ai].then(|| format!("mb({b}) = {}", star.mask_to_set(&mb))),
        ),
        fixable_check(g, "b fixable", bi),
    ];
    let target = Target::InterventionalCovariance {
        operation: Operation::RemoveDirected,
        edge: format!("{a}->{b}"),
    };
    Ok(composite(target, parts, checks))
}

/// Whether the covariance after adding `a -> b` (any coefficient) is
/// identified from Σ: every path sum from `b` to its proper descendants.
pub fn check_add_directed(g: &Admg, a: &str, b: &str, method: Method) -> Result<IdentifiabilityReport> {
    let e = Edge::directed(a, b);
    let bi = g.index_of(b)?;
    g.index_of(a)?;
    if g.has_edge(&e) {
        return Err(Error::EdgeExists(e.to_string()));
    }
    g.with_edge(&e)?;
    let parts = proper_descendants(g, bi)
        .into_iter()
        .map(|c| path_part(g, bi, c, method))
        .collect();
    let checks = vec![fixable_check(g, "b fixable", bi)];
    let target = Target::InterventionalCovariance {
        operation: Operation::AddDirected,
        edge: e.to_string(),
    };
    Ok(composite(target, parts, checks))
}

/// Whether the covariance after removing `a <-> b` is identified from Σ:
/// the error covariance, and the path sums out of both endpoints.
pub fn check_remove_bidirected(g: &Admg, a: &str, b: &str) -> Result<IdentifiabilityReport> {
    let (ai, bi) = bidirected_edge(g, a, b)?;
    let mut parts = vec![omega_idx(g, ai, bi)];
    for v in proper_descendants(g, ai) {
        parts.push(path_sum_idx(g, ai, v));
    }
    for c in proper_descendants(g, bi) {
        parts.push(path_sum_idx(g, bi, c));
    }
    let (al, bl) = (g.label(ai), g.label(bi));
    let star = g.without_edge(&Edge::bidirected(al, bl))?;
    let w = g.an_in(&[bi], &g.full_mask());
    let dis = star.dis_in(bi, &w);
    let checks = vec![
        fixable_check(g, "a* fixable", ai),
        fixable_check(g, "b fixable", bi),
        Check::new("a* outside dis(b) in G*_an(b)", !dis[ai], None),
    ];
    let target = Target::InterventionalCovariance {
        operation: Operation::RemoveBidirected,
        edge: format!("{al}<->{bl}"),
    };
    Ok(composite(target, parts, checks))
}

/// Simple graphs (at most one edge per vertex pair) are generically
/// identifiable; anything else is reported as unknown.
pub fn check_simple_generic(g: &Admg) -> IdentifiabilityReport {
    if g.is_simple() {
        IdentifiabilityReport {
            target: Target::Model,
            status: Status::GenericallyIdentifiable,
            adjustment: None,
            recipe: None,
            reason: None,
            parts: Vec::new(),
            checks: vec![Check::new("graph is simple", true, None)],
        }
    } else {
        let pair = g
            .bidirected_edges()
            .into_iter()
            .find(|(a, b)| {
                g.has_edge(&Edge::directed(a.clone(), b.clone())) || g.has_edge(&Edge::directed(b.clone(), a.clone()))
            })
            .expect("non-simple graph has a doubled pair");
        IdentifiabilityReport {
            target: Target::Model,
            status: Status::Unknown,
            adjustment: None,
            recipe: None,
            reason: Some("instrumental-set analysis out of scope".into()),
            parts: Vec::new(),
            checks: vec![Check::new(
                "graph is simple",
                false,
                Some(format!("pair ({},{}) carries two edges", pair.0, pair.1)),
            )],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn vs(s: &[&str]) -> VertexSet {
        VertexSet::new(s.iter().copied())
    }

    fn double_verma() -> Admg {
        Admg::from_edge_strs(
            &["0", "1", "2", "3", "4"],
            &["0->1", "1->2", "2->3", "3->4", "1->3", "2<->4", "0<->2", "0<->3", "0<->4"],
        )
        .unwrap()
    }

    #[test]
    fn lambda_examples() {
        let r = identify_lambda(&iv(), "2", "3").unwrap();
        assert_eq!(r.status, Status::NotIdentifiedByTheseMethods);
        assert!(r.reason.unwrap().contains("district"));
        let r = identify_lambda(&verma(), "3", "4").unwrap();
        assert_eq!(r.adjustment, Some(vs(&["1", "2"])));
        let r = identify_lambda(&verma(), "1", "2").unwrap();
        assert_eq!(r.adjustment, Some(VertexSet::empty()));
        assert!(matches!(identify_lambda(&verma(), "2", "1"), Err(Error::NoSuchEdge(_))));
    }

    #[test]
    fn lambda_fails_on_edge_into_district() {
        // a -> d with d in the district of b
        let g = Admg::from_edge_strs(&["a", "b", "d"], &["a->b", "a->d", "d->b", "d<->b"]).unwrap();
        let r = identify_lambda(&g, "a", "b").unwrap();
        assert!(!r.is_identified());
        assert!(r.reason.unwrap().contains("a->d"));
    }

    #[test]
    fn path_sum_examples() {
        let r = identify_path_sum(&fig8(), "2", "4").unwrap();
        assert_eq!(r.adjustment, Some(vs(&["1"])));
        let r = identify_path_sum(&fig8(), "2", "5").unwrap();
        assert!(!r.is_identified());
        assert!(r.reason.unwrap().starts_with("b not fixable"));
        assert!(matches!(identify_path_sum(&fig8(), "6", "1"), Err(Error::NotADescendant { .. })));
    }

    #[test]
    fn cutvertex_recipes() {
        let step = |f: &str, t: &str, a: &[&str]| RegressionStep { from: f.into(), to: t.into(), adjustment: vs(a) };
        let r = identify_path_sum_cutvertex(&fig8(), "2", "5").unwrap();
        assert_eq!(r.status, Status::GenericallyIdentifiable);
        assert_eq!(r.recipe.unwrap(), vec![step("2", "4", &["1"]), step("4", "5", &["1", "2", "3"])]);
        let r = identify_path_sum_cutvertex(&fig8(), "2", "6").unwrap();
        assert_eq!(r.recipe.unwrap(), vec![step("2", "4", &["1"]), step("4", "6", &["1", "2", "3"])]);
        let r = identify_path_sum_cutvertex(&verma(), "3", "4").unwrap();
        assert_eq!(r.status, Status::RegressionIdentifiable);
        assert_eq!(r.recipe.unwrap().len(), 1);
    }

    #[test]
    fn omega_examples() {
        // 2 is not fixable in the Verma graph, so 2<->4 is not identified
        let r = identify_omega(&verma(), "4", "2").unwrap();
        assert_eq!(r.target, Target::BidirectedCoefficient { a: "2".into(), b: "4".into() });
        assert!(!r.is_identified());
        let tri = Admg::from_edge_strs(&["1", "2", "3"], &["1<->2", "2<->3", "1<->3"]).unwrap();
        let r = identify_omega(&tri, "1", "3").unwrap();
        assert_eq!(r.adjustment, Some(VertexSet::empty()));
        assert!(matches!(identify_omega(&verma(), "1", "4"), Err(Error::NoSuchEdge(_))));
        assert!(matches!(identify_omega(&verma(), "2", "2"), Err(Error::NoSuchEdge(_))));
    }

    #[test]
    fn omega_uses_joint_ancestral_set() {
        // 0 -> 1, 1 <-> 3, 0 <-> 3: conditioning only within an(3) would miss 0
        let g = Admg::from_edge_strs(&["0", "1", "3"], &["0->1", "1<->3", "0<->3"]).unwrap();
        let r = identify_omega(&g, "1", "3").unwrap();
        assert!(r.is_identified());
        assert_eq!(r.adjustment, Some(VertexSet::new(["0"])));
    }

    #[test]
    fn remove_directed_examples() {
        let r = check_remove_directed(&verma(), "1", "2", Method::Regression).unwrap();
        assert!(!r.is_identified());
        assert!(r.reason.as_deref().unwrap().contains("b not fixable"));
        assert!(check_remove_directed(&verma(), "3", "4", Method::Regression).unwrap().is_identified());
        let r = check_remove_directed(&double_verma(), "0", "1", Method::Regression).unwrap();
        assert!(r.is_identified());
        assert!(r.checks.iter().all(|c| c.passed));
    }

    #[test]
    fn add_directed_examples() {
        let g = verma().without_edge(&Edge::directed("3", "4")).unwrap();
        assert!(check_add_directed(&g, "3", "4", Method::Regression).unwrap().is_identified());
        assert!(matches!(
            check_add_directed(&verma(), "4", "1", Method::Regression),
            Err(Error::WouldCreateCycle { .. })
        ));
        assert!(matches!(
            check_add_directed(&verma(), "1", "2", Method::Regression),
            Err(Error::EdgeExists(_))
        ));
        let g = fig8().without_edge(&Edge::directed("1", "2")).unwrap();
        let r = check_add_directed(&g, "1", "2", Method::Regression).unwrap();
        assert!(!r.is_identified());
        assert!(r.reason.unwrap().contains("b not fixable"));
    }

    #[test]
    fn per_target_fixability_is_weaker_than_global() {
        let g = Admg::from_edge_strs(&["x", "b", "d", "e"], &["b->d", "b<->e", "e<->d"]).unwrap();
        let r = check_add_directed(&g, "x", "b", Method::Regression).unwrap();
        assert!(r.is_identified());
        assert!(!r.checks.iter().find(|c| c.name == "b fixable").unwrap().passed);
    }

    #[test]
    fn remove_bidirected_examples() {
        let tri = Admg::from_edge_strs(&["1", "2", "3"], &["1<->2", "2<->3", "1<->3"]).unwrap();
        let r = check_remove_bidirected(&tri, "1", "3").unwrap();
        assert!(r.is_identified());
        assert!(!check_remove_bidirected(&verma(), "2", "4").unwrap().is_identified());
        assert!(matches!(check_remove_bidirected(&verma(), "2", "2"), Err(Error::NoSuchEdge(_))));
    }

    #[test]
    fn simple_generic_examples() {
        let dag = Admg::from_edge_strs(&["1", "2"], &["1->2"]).unwrap();
        assert_eq!(check_simple_generic(&dag).status, Status::GenericallyIdentifiable);
        let r = check_simple_generic(&iv());
        assert_eq!(r.status, Status::Unknown);
        assert_eq!(r.reason.as_deref(), Some("instrumental-set analysis out of scope"));
        let gadget = Admg::from_edge_strs(&["1", "2", "3", "4"], &["1->3", "2->4", "1<->2", "1<->4", "2<->3"]).unwrap();
        assert_eq!(check_simple_generic(&gadget).status, Status::GenericallyIdentifiable);
    }
}
