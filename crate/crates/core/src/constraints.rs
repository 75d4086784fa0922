//! Covariance constraints found by removing identifiable edges one at a
//! time until no (directed) edges remain: every pair left without a trek
//! must have a vanishing entry in the final covariance, and replaying the
//! removals on Σ turns each such entry into a rational function of Σ.

use std::cmp::Ordering;
use std::collections::HashSet;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::cov::CovMatrix;
use crate::error::{Error, Result};
use crate::graph::{natural_cmp, Admg, Edge};
use crate::identify::{self, IdentifiabilityReport, Method};
use crate::intervention;
use crate::linalg;
use crate::trek;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanTarget {
    /// Remove directed edges only.
    #[default]
    DirectedOnly,
    /// Remove every edge. Bidirected removals keep the non-descendant block
    /// fixed, which is an assumption rather than a theorem.
    AllEdges,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RemovalStep {
    pub edge: Edge,
    pub report: IdentifiabilityReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RemovalPlan {
    pub target: PlanTarget,
    pub steps: Vec<RemovalStep>,
    pub terminal_graph: Admg,
}

fn finished(g: &Admg, target: PlanTarget) -> bool {
    match target {
        PlanTarget::DirectedOnly => g.num_directed() == 0,
        PlanTarget::AllEdges => g.num_directed() == 0 && g.num_bidirected() == 0,
    }
}

fn check_step(g: &Admg, e: &Edge) -> Result<IdentifiabilityReport> {
    match e {
        Edge::Directed { tail, head } => identify::check_remove_directed(g, tail, head, Method::Regression),
        Edge::Bidirected(a, b) => identify::check_remove_bidirected(g, a, b),
    }
}

/// Candidate order: by head label, then tail label (natural order),
/// directed before bidirected. Bidirected edges use their larger endpoint
/// as head.
fn candidate_cmp(x: &Edge, y: &Edge) -> Ordering {
    let key = |e: &Edge| -> (String, String, bool) {
        match e {
            Edge::Directed { tail, head } => (head.clone(), tail.clone(), false),
            Edge::Bidirected(a, b) => (b.clone(), a.clone(), true),
        }
    };
    let (hx, tx, bx) = key(x);
    let (hy, ty, by) = key(y);
    natural_cmp(&hx, &hy)
        .then_with(|| natural_cmp(&tx, &ty))
        .then(bx.cmp(&by))
}

fn candidates(g: &Admg, target: PlanTarget) -> Vec<Edge> {
    let mut c: Vec<Edge> = g
        .edges()
        .into_iter()
        .filter(|e| target == PlanTarget::AllEdges || e.is_directed())
        .collect();
    c.sort_by(candidate_cmp);
    c
}

impl RemovalPlan {
    pub fn edges(&self) -> Vec<Edge> {
        self.steps.iter().map(|s| s.edge.clone()).collect()
    }

    /// Builds a plan from an explicit edge order, checking every step in the
    /// graph left by the previous ones.
    pub fn from_edges(g: &Admg, edges: &[Edge], target: PlanTarget) -> Result<RemovalPlan> {
        let mut cur = g.clone();
        let mut steps = Vec::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            if !cur.has_edge(e) {
                return Err(Error::PlanInvalid(format!("step {}: edge {e} not present", k + 1)));
            }
            if target == PlanTarget::DirectedOnly && !e.is_directed() {
                return Err(Error::PlanInvalid(format!("step {}: {e} is not directed", k + 1)));
            }
            let report = check_step(&cur, e)?;
            if !report.is_identified() {
                return Err(Error::PlanInvalid(format!("step {}: {}", k + 1, report.summary())));
            }
            cur = cur.without_edge(e)?;
            steps.push(RemovalStep { edge: e.clone(), report });
        }
        if !finished(&cur, target) {
            return Err(Error::PlanInvalid("edges remain after the last step".into()));
        }
        Ok(RemovalPlan { target, steps, terminal_graph: cur })
    }

    /// Re-checks the plan against `g`.
    pub fn validate(&self, g: &Admg) -> Result<()> {
        let fresh = RemovalPlan::from_edges(g, &self.edges(), self.target)?;
        if fresh.terminal_graph != self.terminal_graph {
            return Err(Error::PlanInvalid("terminal graph does not match".into()));
        }
        Ok(())
    }

    /// Applies the removals to `s`; returns the final covariance and the
    /// largest absolute entry seen in any intermediate covariance.
    pub fn replay(&self, g: &Admg, s: &CovMatrix) -> Result<(CovMatrix, f64)> {
        let mut cur_g = g.clone();
        let mut cur = s.reordered(g.vertices())?;
        let mut scale = cur.max_abs_entry();
        for step in &self.steps {
            let r = match &step.edge {
                Edge::Directed { tail, head } => {
                    intervention::remove_directed(&cur, &cur_g, tail, head, Method::Regression)?
                }
                Edge::Bidirected(a, b) => intervention::remove_bidirected(&cur, &cur_g, a, b)?,
            };
            cur_g = r.new_graph;
            cur = r.new_cov;
            scale = scale.max(cur.max_abs_entry());
        }
        Ok((cur, scale))
    }
}

struct Search {
    target: PlanTarget,
    dead: HashSet<Vec<Edge>>,
    best: Vec<Edge>,
    steps: Vec<RemovalStep>,
}

impl Search {
    fn dfs(&mut self, g: &Admg) -> Result<Option<Admg>> {
        if finished(g, self.target) {
            return Ok(Some(g.clone()));
        }
        let key = g.edges();
        if self.dead.contains(&key) {
            return Ok(None);
        }
        for e in candidates(g, self.target) {
            let report = check_step(g, &e)?;
            if !report.is_identified() {
                continue;
            }
            let next = g.without_edge(&e)?;
            self.steps.push(RemovalStep { edge: e, report });
            if self.steps.len() > self.best.len() {
                self.best = self.steps.iter().map(|s| s.edge.clone()).collect();
            }
            if let Some(t) = self.dfs(&next)? {
                return Ok(Some(t));
            }
            self.steps.pop();
        }
        self.dead.insert(key);
        Ok(None)
    }
}

/// Depth-first search with backtracking for an order in which every edge
/// removal is identified. Returns the first complete plan in candidate
/// order, or `NoPlanFound` with the longest valid prefix.
pub fn plan_removals(g: &Admg, target: PlanTarget) -> Result<RemovalPlan> {
    let mut search = Search {
        target,
        dead: HashSet::new(),
        best: Vec::new(),
        steps: Vec::new(),
    };
    match search.dfs(g)? {
        Some(terminal_graph) => Ok(RemovalPlan { target, steps: search.steps, terminal_graph }),
        None => Err(Error::NoPlanFound {
            prefix: search.best.iter().map(Edge::to_string).collect(),
        }),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSet {
    pub plan: RemovalPlan,
    /// Pairs whose replayed entry must vanish on the model.
    pub pairs: Vec<(String, String)>,
    /// Trek-free pairs whose replayed entry is zero for every Σ.
    pub trivial: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub pair: (String, String),
    pub value: f64,
    pub scale: f64,
}

impl Residual {
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.value.abs() / self.scale
        } else {
            self.value.abs()
        }
    }
}

const PROBES: u64 = 3;
const TRIVIAL_TOL: f64 = 1e-9;

/// A well-conditioned positive definite matrix with generic entries.
fn probe_cov(labels: &[String], seed: u64) -> Result<CovMatrix> {
    let n = labels.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = DMatrix::from_fn(n, n, |_, _| -> f64 { StandardNormal.sample(&mut rng) });
    let mut m = &w * w.transpose() / n.max(1) as f64 + DMatrix::identity(n, n);
    linalg::symmetrize_upper(&mut m);
    CovMatrix::new(labels.to_vec(), m)
}

/// Trek-free pairs of the plan's terminal graph, split into genuine
/// constraints and pairs whose replayed entry vanishes identically.
pub fn derive_constraints(g: &Admg, plan: &RemovalPlan) -> Result<ConstraintSet> {
    plan.validate(g)?;
    let t = &plan.terminal_graph;
    let labels = g.vertices();
    let mut free = Vec::new();
    for (i, v) in labels.iter().enumerate() {
        for w in &labels[i + 1..] {
            if trek::trek_count(t, v, w)? == 0.0 {
                free.push((v.clone(), w.clone()));
            }
        }
    }
    let mut zero_everywhere = vec![true; free.len()];
    for seed in 0..PROBES {
        let probe = probe_cov(labels, 0x5eed_0000 + seed)?;
        let (out, scale) = plan.replay(g, &probe)?;
        for (k, (v, w)) in free.iter().enumerate() {
            if out.get(v, w)?.abs() > TRIVIAL_TOL * scale {
                zero_everywhere[k] = false;
            }
        }
    }
    let (mut pairs, mut trivial) = (Vec::new(), Vec::new());
    for (p, z) in free.into_iter().zip(zero_everywhere) {
        if z {
            trivial.push(p);
        } else {
            pairs.push(p);
        }
    }
    Ok(ConstraintSet { plan: plan.clone(), pairs, trivial })
}

/// Replays the plan on `s` and reports the constrained entries.
pub fn residual_of_plan(g: &Admg, s: &CovMatrix, cs: &ConstraintSet) -> Result<Vec<Residual>> {
    s.check_labels(g.vertices())?;
    let (out, scale) = cs.plan.replay(g, s)?;
    cs.pairs
        .iter()
        .map(|(v, w)| {
            Ok(Residual {
                pair: (v.clone(), w.clone()),
                value: out.get(v, w)?,
                scale,
            })
        })
        .collect()
}

/// Entry accessor for the 4×4 polynomials: labels `1..4` when present,
/// otherwise positions in label order.
fn four(s: &CovMatrix) -> Result<impl Fn(usize, usize) -> f64 + '_> {
    if s.dim() != 4 {
        return Err(Error::WrongDimension { expected: 4, got: s.dim() });
    }
    let named: Option<Vec<usize>> = ["1", "2", "3", "4"].iter().map(|l| s.index_of(l).ok()).collect();
    let idx = named.unwrap_or_else(|| vec![0, 1, 2, 3]);
    Ok(move |i: usize, j: usize| s.at(idx[i - 1], idx[j - 1]))
}

/// The eight signed monomials of the Verma polynomial.
pub fn verma_terms(s: &CovMatrix) -> Result<[f64; 8]> {
    let g = four(s)?;
    Ok([
        g(1, 1) * g(1, 3) * g(2, 2) * g(3, 4),
        -g(1, 2) * g(1, 2) * g(1, 3) * g(3, 4),
        -g(1, 1) * g(1, 4) * g(2, 2) * g(3, 3),
        g(1, 2) * g(1, 2) * g(1, 4) * g(3, 3),
        -g(1, 1) * g(1, 3) * g(2, 3) * g(2, 4),
        g(1, 1) * g(1, 4) * g(2, 3) * g(2, 3),
        g(1, 2) * g(1, 3) * g(1, 3) * g(2, 4),
        -g(1, 2) * g(1, 3) * g(1, 4) * g(2, 3),
    ])
}

/// The Verma polynomial; vanishes on every covariance of the Verma graph.
pub fn eval_verma(s: &CovMatrix) -> Result<f64> {
    Ok(verma_terms(s)?.iter().sum())
}

/// The four signed monomials of the gadget polynomial.
pub fn gadget_terms(s: &CovMatrix) -> Result<[f64; 4]> {
    let g = four(s)?;
    Ok([
        g(1, 1) * g(2, 2) * g(3, 4),
        -g(1, 3) * g(1, 4) * g(2, 2),
        g(1, 3) * g(1, 2) * g(2, 4),
        -g(2, 3) * g(1, 1) * g(2, 4),
    ])
}

/// `σ11σ22σ34 − σ13σ14σ22 + σ13σ12σ24 − σ23σ11σ24`.
pub fn eval_gadget(s: &CovMatrix) -> Result<f64> {
    Ok(gadget_terms(s)?.iter().sum())
}

/// Largest absolute monomial, for relative comparisons.
pub fn term_scale(terms: &[f64]) -> f64 {
    terms.iter().fold(0.0, |m, t| m.max(t.abs()))
}
