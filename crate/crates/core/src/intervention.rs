//! Edge interventions: the covariance after removing or adding a directed
//! edge or removing a bidirected edge, computed from Σ alone, and the
//! matching row-wise transforms of individual-level data.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::cov::CovMatrix;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::graph::{Admg, Edge, VertexSet};
use crate::identify::{
    self, orient_bidirected, IdentifiabilityReport, Method, RegressionStep, Target,
};
use crate::linalg;
use crate::sem::SemParameters;

/// A quantity identified from Σ and used to build Σ*.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UsedQuantity {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjustment: Option<VertexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recipe: Option<Vec<RegressionStep>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PdCheck {
    pub passed: bool,
    pub min_eigenvalue: f64,
}

impl PdCheck {
    fn of(c: &CovMatrix) -> Self {
        PdCheck {
            passed: c.is_positive_definite(),
            min_eigenvalue: c.min_eigenvalue(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterventionResult {
    pub new_graph: Admg,
    pub new_cov: CovMatrix,
    pub used: Vec<UsedQuantity>,
    /// Non-positive-definite results are returned, flagged here.
    pub pd_check: PdCheck,
    /// Absent when the quantities were supplied rather than identified.
    pub report: Option<IdentifiabilityReport>,
}

/// The linear map `x ↦ M x` applied to each observation.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearTransform {
    pub labels: Vec<String>,
    pub matrix: DMatrix<f64>,
}

fn aligned(s: &CovMatrix, g: &Admg) -> Result<CovMatrix> {
    s.reordered(g.vertices())
}

fn used_from(report: &IdentifiabilityReport, s: &CovMatrix) -> Result<UsedQuantity> {
    Ok(UsedQuantity {
        name: report.target.to_string(),
        value: report.evaluate(s)?,
        adjustment: report.adjustment.clone(),
        recipe: report.recipe.clone(),
    })
}

/// Everything needed to apply `M = I + coef · d · e_aᵀ`.
struct DirectedUpdate {
    graph_after: Admg,
    source: usize,
    d: Vec<f64>,
    coef: f64,
    used: Vec<UsedQuantity>,
    report: IdentifiabilityReport,
}

impl DirectedUpdate {
    fn matrix(&self) -> DMatrix<f64> {
        let n = self.d.len();
        let mut m = DMatrix::identity(n, n);
        for v in 0..n {
            m[(v, self.source)] += self.coef * self.d[v];
        }
        m
    }
}

/// Path sums from `b` to every vertex (1 at `b`, 0 outside `de(b)`), from
/// the identified parts of a composite report.
fn path_row(g: &Admg, b: usize, parts: &[IdentifiabilityReport], s: &CovMatrix, used: &mut Vec<UsedQuantity>) -> Result<Vec<f64>> {
    let mut d = vec![0.0; g.len()];
    d[b] = 1.0;
    for p in parts {
        if let Target::PathSum { from, to } = &p.target {
            if g.index_of(from)? == b {
                let q = used_from(p, s)?;
                d[g.index_of(to)?] = q.value;
                used.push(q);
            }
        }
    }
    Ok(d)
}

fn require(report: IdentifiabilityReport) -> Result<IdentifiabilityReport> {
    if report.is_identified() {
        Ok(report)
    } else {
        Err(Error::NotIdentifiable(Box::new(report)))
    }
}

fn plan_remove(s: &CovMatrix, g: &Admg, a: &str, b: &str, method: Method) -> Result<DirectedUpdate> {
    let report = require(identify::check_remove_directed(g, a, b, method)?)?;
    let lambda = used_from(&report.parts[0], s)?;
    let coef = -lambda.value;
    let mut used = vec![lambda];
    let bi = g.index_of(b)?;
    let d = path_row(g, bi, &report.parts[1..], s, &mut used)?;
    Ok(DirectedUpdate {
        graph_after: g.without_edge(&Edge::directed(a, b))?,
        source: g.index_of(a)?,
        d,
        coef,
        used,
        report,
    })
}

fn plan_add(s: &CovMatrix, g: &Admg, a: &str, b: &str, lam: f64, method: Method) -> Result<DirectedUpdate> {
    if !lam.is_finite() {
        return Err(Error::InvalidParameters(format!("coefficient {lam} is not finite")));
    }
    let report = require(identify::check_add_directed(g, a, b, method)?)?;
    let mut used = vec![UsedQuantity {
        name: format!("lambda[{a}->{b}]"),
        value: lam,
        adjustment: None,
        recipe: None,
    }];
    let bi = g.index_of(b)?;
    let d = path_row(g, bi, &report.parts, s, &mut used)?;
    Ok(DirectedUpdate {
        graph_after: g.with_edge(&Edge::directed(a, b))?,
        source: g.index_of(a)?,
        d,
        coef: lam,
        used,
        report,
    })
}

/// `M Σ Mᵀ` for `M = I + coef · d · e_aᵀ`, assembled on the upper triangle.
/// Rows and columns where `d` vanishes are copied unchanged.
fn directed_congruence(s: &DMatrix<f64>, a: usize, d: &[f64], coef: f64) -> DMatrix<f64> {
    let n = d.len();
    let mut out = s.clone();
    let saa = s[(a, a)];
    for v in 0..n {
        for w in v..n {
            if d[v] == 0.0 && d[w] == 0.0 {
                continue;
            }
            out[(v, w)] = s[(v, w)]
                + coef * (d[v] * s[(a, w)] + d[w] * s[(a, v)])
                + coef * coef * d[v] * d[w] * saa;
        }
    }
    linalg::symmetrize_upper(&mut out);
    out
}

fn finish_directed(s: &CovMatrix, up: DirectedUpdate) -> Result<InterventionResult> {
    let m = directed_congruence(s.matrix(), up.source, &up.d, up.coef);
    let new_cov = CovMatrix::from_symmetric(s.labels().to_vec(), m)?;
    Ok(InterventionResult {
        pd_check: PdCheck::of(&new_cov),
        new_graph: up.graph_after,
        new_cov,
        used: up.used,
        report: Some(up.report),
    })
}

/// Σ after removing `a -> b`. Fails with `NotIdentifiable` when the edge
/// coefficient or a path sum out of `b` cannot be recovered from Σ.
pub fn remove_directed(s: &CovMatrix, g: &Admg, a: &str, b: &str, method: Method) -> Result<InterventionResult> {
    let s = aligned(s, g)?;
    let up = plan_remove(&s, g, a, b, method)?;
    finish_directed(&s, up)
}

/// Σ after adding `a -> b` with coefficient `lam`.
pub fn add_directed(s: &CovMatrix, g: &Admg, a: &str, b: &str, lam: f64, method: Method) -> Result<InterventionResult> {
    let s = aligned(s, g)?;
    let up = plan_add(&s, g, a, b, lam, method)?;
    finish_directed(&s, up)
}

/// Path sums and error covariance needed to remove a bidirected edge.
/// `from_a` and `from_b` are rows of `(I − Λ)⁻¹` in graph vertex order for
/// the oriented endpoints `a*` and `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct BidirectedQuantities {
    pub a: String,
    pub b: String,
    pub omega: f64,
    pub from_a: Vec<f64>,
    pub from_b: Vec<f64>,
}

/// The same quantities read directly off generating parameters, bypassing
/// identification.
pub fn bidirected_quantities_from_params(p: &SemParameters, a: &str, b: &str) -> Result<BidirectedQuantities> {
    let g = p.graph();
    let e = Edge::bidirected(a, b);
    if a == b || !g.has_edge(&e) {
        return Err(Error::NoSuchEdge(e.to_string()));
    }
    let (ai, bi) = orient_bidirected(g, g.index_of(a)?, g.index_of(b)?);
    let t = p.path_sum_matrix();
    Ok(BidirectedQuantities {
        a: g.label(ai).into(),
        b: g.label(bi).into(),
        omega: p.omega_matrix()[(ai, bi)],
        from_a: t.row(ai).iter().copied().collect(),
        from_b: t.row(bi).iter().copied().collect(),
    })
}

fn bidirected_update(s: &DMatrix<f64>, q: &BidirectedQuantities) -> DMatrix<f64> {
    let n = q.from_a.len();
    let mut out = s.clone();
    for v in 0..n {
        for w in v..n {
            let delta = q.from_a[v] * q.from_b[w] + q.from_b[v] * q.from_a[w];
            if delta != 0.0 {
                out[(v, w)] = s[(v, w)] - q.omega * delta;
            }
        }
    }
    linalg::symmetrize_upper(&mut out);
    out
}

/// Σ after removing `a <-> b` using supplied quantities.
pub fn remove_bidirected_forced(s: &CovMatrix, g: &Admg, q: &BidirectedQuantities) -> Result<InterventionResult> {
    let s = aligned(s, g)?;
    if q.from_a.len() != g.len() || q.from_b.len() != g.len() {
        return Err(Error::WrongDimension {
            expected: g.len(),
            got: q.from_a.len().max(q.from_b.len()),
        });
    }
    let new_graph = g.without_edge(&Edge::bidirected(q.a.clone(), q.b.clone()))?;
    let m = bidirected_update(s.matrix(), q);
    let new_cov = CovMatrix::from_symmetric(s.labels().to_vec(), m)?;
    let used = vec![UsedQuantity {
        name: format!("omega[{}<->{}]", q.a, q.b),
        value: q.omega,
        adjustment: None,
        recipe: None,
    }];
    Ok(InterventionResult {
        pd_check: PdCheck::of(&new_cov),
        new_graph,
        new_cov,
        used,
        report: None,
    })
}

/// Σ after removing `a <-> b`, with ω and the path sums out of both
/// endpoints identified from Σ. Entries among non-descendants of `b` are
/// left unchanged.
pub fn remove_bidirected(s: &CovMatrix, g: &Admg, a: &str, b: &str) -> Result<InterventionResult> {
    let s = aligned(s, g)?;
    let report = require(identify::check_remove_bidirected(g, a, b)?)?;
    let Target::BidirectedCoefficient { a: astar, b: bb } = report.parts[0].target.clone() else {
        unreachable!("first part is the error covariance")
    };
    let omega = used_from(&report.parts[0], &s)?;
    let (ai, bi) = (g.index_of(&astar)?, g.index_of(&bb)?);
    let mut used = vec![omega.clone()];
    let from_a = path_row(g, ai, &report.parts[1..], &s, &mut used)?;
    let from_b = path_row(g, bi, &report.parts[1..], &s, &mut used)?;
    let q = BidirectedQuantities { a: astar, b: bb, omega: omega.value, from_a, from_b };
    let mut out = remove_bidirected_forced(&s, g, &q)?;
    out.used = used;
    out.report = Some(report);
    Ok(out)
}

fn transform_of(g: &Admg, up: &DirectedUpdate) -> LinearTransform {
    LinearTransform {
        labels: g.vertices().to_vec(),
        matrix: up.matrix(),
    }
}

/// `M` with `X* = M X` for removing `a -> b`.
pub fn transform_matrix_remove(s: &CovMatrix, g: &Admg, a: &str, b: &str, method: Method) -> Result<LinearTransform> {
    let s = aligned(s, g)?;
    Ok(transform_of(g, &plan_remove(&s, g, a, b, method)?))
}

/// `M` with `X* = M X` for adding `a -> b` with coefficient `lam`.
pub fn transform_matrix_add(s: &CovMatrix, g: &Admg, a: &str, b: &str, lam: f64, method: Method) -> Result<LinearTransform> {
    let s = aligned(s, g)?;
    Ok(transform_of(g, &plan_add(&s, g, a, b, lam, method)?))
}

fn apply_rows(d: &Dataset, g: &Admg, up: &DirectedUpdate) -> Result<Dataset> {
    let x = d.reordered(g.vertices())?;
    let mut rows = x.rows().clone();
    let src = x.rows().column(up.source).into_owned();
    for (j, &dj) in up.d.iter().enumerate() {
        if dj != 0.0 {
            rows.column_mut(j).axpy(up.coef * dj, &src, 1.0);
        }
    }
    Dataset::new(g.vertices().to_vec(), rows)?.reordered(d.labels())
}

/// Counterfactual data for removing `a -> b`: each row becomes
/// `x − λ · σ(D_b·) · x_a`. Column order follows the input.
pub fn transform_data_remove(d: &Dataset, s: &CovMatrix, g: &Admg, a: &str, b: &str, method: Method) -> Result<Dataset> {
    let s = aligned(s, g)?;
    let up = plan_remove(&s, g, a, b, method)?;
    apply_rows(d, g, &up)
}

/// Counterfactual data for adding `a -> b` with coefficient `lam`: each
/// row becomes `x + lam · σ(D_b·) · x_a`.
pub fn transform_data_add(d: &Dataset, s: &CovMatrix, g: &Admg, a: &str, b: &str, lam: f64, method: Method) -> Result<Dataset> {
    let s = aligned(s, g)?;
    let up = plan_add(&s, g, a, b, lam, method)?;
    apply_rows(d, g, &up)
}
