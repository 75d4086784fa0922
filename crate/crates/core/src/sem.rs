//! Linear Gaussian SEM parameters and the covariance they induce.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::cov::CovMatrix;
use crate::error::{Error, Result};
use crate::graph::{Admg, Edge};
use crate::linalg;

/// Edge coefficients and error covariance for a graph.
///
/// `lambda[(i, j)]` holds the coefficient of `i -> j`; `omega` is the error
/// covariance. Both are indexed by the graph's vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct SemParameters {
    graph: Admg,
    lambda: DMatrix<f64>,
    omega: DMatrix<f64>,
}

impl SemParameters {
    /// Builds parameters from labeled maps. Keys must match the graph's
    /// edges exactly, every vertex needs a variance, and Ω must be positive
    /// definite.
    pub fn new(
        graph: Admg,
        lambda: &BTreeMap<Edge, f64>,
        variances: &BTreeMap<String, f64>,
        covariances: &BTreeMap<Edge, f64>,
    ) -> Result<Self> {
        let n = graph.len();
        let mut lam = DMatrix::zeros(n, n);
        let mut om = DMatrix::zeros(n, n);
        for (e, &x) in lambda {
            let Edge::Directed { tail, head } = e else {
                return Err(Error::InvalidParameters(format!("lambda key {e} is not a directed edge")));
            };
            if !graph.has_edge(e) {
                return Err(Error::InvalidParameters(format!("lambda given for absent edge {e}")));
            }
            check_finite(x, e)?;
            lam[(graph.index_of(tail)?, graph.index_of(head)?)] = x;
        }
        for (t, h) in graph.directed_edges() {
            if !lambda.contains_key(&Edge::directed(t.clone(), h.clone())) {
                return Err(Error::InvalidParameters(format!("missing lambda for {t}->{h}")));
            }
        }
        for (v, &x) in variances {
            let i = graph.index_of(v)?;
            check_finite(x, v)?;
            if !(x > 0.0) {
                return Err(Error::InvalidParameters(format!("variance of {v} must be positive, got {x}")));
            }
            om[(i, i)] = x;
        }
        for v in graph.vertices() {
            if !variances.contains_key(v) {
                return Err(Error::InvalidParameters(format!("missing variance for {v}")));
            }
        }
        for (e, &x) in covariances {
            let Edge::Bidirected(a, b) = e else {
                return Err(Error::InvalidParameters(format!("omega key {e} is not a bidirected edge")));
            };
            if !graph.has_edge(e) {
                return Err(Error::InvalidParameters(format!("omega given for absent edge {e}")));
            }
            check_finite(x, e)?;
            let (i, j) = (graph.index_of(a)?, graph.index_of(b)?);
            om[(i, j)] = x;
            om[(j, i)] = x;
        }
        for (a, b) in graph.bidirected_edges() {
            if !covariances.contains_key(&Edge::bidirected(a.clone(), b.clone())) {
                return Err(Error::InvalidParameters(format!("missing omega for {a}<->{b}")));
            }
        }
        Self::from_dense(graph, lam, om)
    }

    /// Builds from dense matrices in graph vertex order. Entries off the
    /// graph's edge pattern must be zero.
    pub fn from_dense(graph: Admg, lambda: DMatrix<f64>, omega: DMatrix<f64>) -> Result<Self> {
        let n = graph.len();
        if lambda.shape() != (n, n) || omega.shape() != (n, n) {
            return Err(Error::InvalidParameters("matrix shape does not match the graph".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if lambda[(i, j)] != 0.0 && !graph.has_directed_idx(i, j) {
                    return Err(Error::InvalidParameters(format!(
                        "nonzero lambda off the edge set at {}->{}",
                        graph.label(i),
                        graph.label(j)
                    )));
                }
                if i != j && omega[(i, j)] != 0.0 && !graph.has_bidirected_idx(i, j) {
                    return Err(Error::InvalidParameters(format!(
                        "nonzero omega off the edge set at {}<->{}",
                        graph.label(i),
                        graph.label(j)
                    )));
                }
                if omega[(i, j)] != omega[(j, i)] {
                    return Err(Error::InvalidParameters("omega is not symmetric".into()));
                }
            }
        }
        if !linalg::is_positive_definite(&omega) {
            return Err(Error::NotPositiveDefinite { what: "Omega".into() });
        }
        Ok(SemParameters { graph, lambda, omega })
    }

    pub fn graph(&self) -> &Admg {
        &self.graph
    }

    pub fn lambda_matrix(&self) -> &DMatrix<f64> {
        &self.lambda
    }

    pub fn omega_matrix(&self) -> &DMatrix<f64> {
        &self.omega
    }

    pub fn lambda(&self, tail: &str, head: &str) -> Result<f64> {
        let e = Edge::directed(tail, head);
        if !self.graph.has_edge(&e) {
            return Err(Error::NoSuchEdge(e.to_string()));
        }
        Ok(self.lambda[(self.graph.index_of(tail)?, self.graph.index_of(head)?)])
    }

    /// `ω_ab`; `a == b` gives the error variance.
    pub fn omega(&self, a: &str, b: &str) -> Result<f64> {
        if a != b {
            let e = Edge::bidirected(a, b);
            if !self.graph.has_edge(&e) {
                return Err(Error::NoSuchEdge(e.to_string()));
            }
        }
        Ok(self.omega[(self.graph.index_of(a)?, self.graph.index_of(b)?)])
    }

    pub fn lambda_map(&self) -> BTreeMap<Edge, f64> {
        self.graph
            .directed_edges()
            .into_iter()
            .map(|(t, h)| {
                let x = self.lambda[(self.graph.index[&t], self.graph.index[&h])];
                (Edge::directed(t, h), x)
            })
            .collect()
    }

    pub fn variance_map(&self) -> BTreeMap<String, f64> {
        self.graph
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), self.omega[(i, i)]))
            .collect()
    }

    pub fn covariance_map(&self) -> BTreeMap<Edge, f64> {
        self.graph
            .bidirected_edges()
            .into_iter()
            .map(|(a, b)| {
                let x = self.omega[(self.graph.index[&a], self.graph.index[&b])];
                (Edge::bidirected(a, b), x)
            })
            .collect()
    }

    /// Parameters of the graph with `edge` removed (its coefficient dropped).
    pub fn without_edge(&self, edge: &Edge) -> Result<SemParameters> {
        let g = self.graph.without_edge(edge)?;
        let (a, b) = edge.endpoints();
        let (i, j) = (self.graph.index_of(a)?, self.graph.index_of(b)?);
        let mut lam = self.lambda.clone();
        let mut om = self.omega.clone();
        if edge.is_directed() {
            lam[(i, j)] = 0.0;
        } else {
            om[(i, j)] = 0.0;
            om[(j, i)] = 0.0;
        }
        Self::from_dense(g, lam, om)
    }

    /// Parameters of the graph with the directed edge `tail -> head` added
    /// with coefficient `value`.
    pub fn with_directed_edge(&self, tail: &str, head: &str, value: f64) -> Result<SemParameters> {
        let g = self.graph.with_edge(&Edge::directed(tail, head))?;
        let mut lam = self.lambda.clone();
        lam[(self.graph.index_of(tail)?, self.graph.index_of(head)?)] = value;
        Self::from_dense(g, lam, self.omega.clone())
    }

    /// `(I − Λ)⁻¹`, whose `(b, c)` entry is the sum over directed paths from
    /// `b` to `c` of the products of their coefficients.
    pub fn path_sum_matrix(&self) -> DMatrix<f64> {
        let n = self.graph.len();
        let topo = self.graph.topo_idx();
        let mut t = DMatrix::<f64>::identity(n, n);
        for b in 0..n {
            for &c in topo {
                if c == b {
                    continue;
                }
                let s: f64 = self
                    .graph
                    .parents_idx(c)
                    .iter()
                    .map(|&p| t[(b, p)] * self.lambda[(p, c)])
                    .sum();
                t[(b, c)] = s;
            }
        }
        t
    }

    pub fn path_sum(&self, from: &str, to: &str) -> Result<PathSum> {
        let (b, c) = (self.graph.index_of(from)?, self.graph.index_of(to)?);
        Ok(PathSum {
            from: from.to_string(),
            to: to.to_string(),
            value: self.path_sum_matrix()[(b, c)],
        })
    }

    /// `Σ = (I − Λ)⁻ᵀ Ω (I − Λ)⁻¹`, labeled in graph vertex order.
    pub fn covariance(&self) -> Result<CovMatrix> {
        let t = self.path_sum_matrix();
        let mut s = t.transpose() * &self.omega * &t;
        linalg::symmetrize_upper(&mut s);
        let cov = CovMatrix::from_symmetric(self.graph.vertices().to_vec(), s)?;
        if !cov.is_positive_definite() {
            return Err(Error::NotPositiveDefinite { what: "Sigma".into() });
        }
        Ok(cov)
    }
}

fn check_finite(x: f64, what: impl std::fmt::Display) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameters(format!("non-finite value for {what}")))
    }
}

/// Sum over directed paths from `from` to `to` of edge-coefficient products.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathSum {
    pub from: String,
    pub to: String,
    pub value: f64,
}

pub fn covariance_from_params(p: &SemParameters) -> Result<CovMatrix> {
    p.covariance()
}

pub fn path_sum(p: &SemParameters, from: &str, to: &str) -> Result<PathSum> {
    p.path_sum(from, to)
}
