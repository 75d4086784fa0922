//! Trek enumeration and the trek-rule covariance.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::cov::CovMatrix;
use crate::error::{Error, Result};
use crate::graph::Admg;
use crate::linalg;
use crate::sem::SemParameters;

pub const DEFAULT_TREK_CAP: usize = 1_000_000;

/// Top of a trek: a shared source vertex or a bidirected edge whose first
/// endpoint heads the left side and second endpoint heads the right side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrekSource {
    Vertex(String),
    Bidirected(String, String),
}

/// A collider-free walk between two endpoints. `left` runs from the top down
/// to the left endpoint, `right` from the top down to the right endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trek {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub source: TrekSource,
}

impl Trek {
    /// Directed edges used, left side first, each as (tail, head).
    pub fn directed_edges(&self) -> Vec<(&str, &str)> {
        let side = |p: &'_ [String]| -> Vec<(usize, usize)> { (1..p.len()).map(|k| (k - 1, k)).collect() };
        let mut out = Vec::new();
        for (i, j) in side(&self.left) {
            out.push((self.left[i].as_str(), self.left[j].as_str()));
        }
        for (i, j) in side(&self.right) {
            out.push((self.right[i].as_str(), self.right[j].as_str()));
        }
        out
    }

    /// `ω_source · Π λ` over both sides.
    pub fn monomial(&self, p: &SemParameters) -> Result<f64> {
        let mut x = match &self.source {
            TrekSource::Vertex(s) => p.omega(s, s)?,
            TrekSource::Bidirected(a, b) => p.omega(a, b)?,
        };
        for (t, h) in self.directed_edges() {
            x *= p.lambda(t, h)?;
        }
        Ok(x)
    }
}

impl fmt::Display for Trek {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut left = self.left.clone();
        left.reverse();
        match &self.source {
            TrekSource::Vertex(_) => {
                let mut s = left.join(" <- ");
                for r in &self.right[1..] {
                    s.push_str(" -> ");
                    s.push_str(r);
                }
                parts.push(s);
            }
            TrekSource::Bidirected(..) => {
                parts.push(left.join(" <- "));
                parts.push(self.right.join(" -> "));
            }
        }
        f.write_str(&parts.join(" <-> "))
    }
}

/// Number of directed paths between every ordered pair, as floats so that
/// large counts saturate rather than overflow.
fn path_counts(g: &Admg) -> DMatrix<f64> {
    let n = g.len();
    let mut c = DMatrix::<f64>::identity(n, n);
    for b in 0..n {
        for &v in g.topo_idx() {
            if v != b {
                c[(b, v)] = g.parents_idx(v).iter().map(|&p| c[(b, p)]).sum();
            }
        }
    }
    c
}

fn trek_count_idx(g: &Admg, counts: &DMatrix<f64>, v: usize, w: usize) -> f64 {
    let n = g.len();
    let mut total = 0.0;
    for s in 0..n {
        total += counts[(s, v)] * counts[(s, w)];
        for &t in g.siblings_idx(s) {
            total += counts[(s, v)] * counts[(t, w)];
        }
    }
    total
}

/// Number of treks between `v` and `w`.
pub fn trek_count(g: &Admg, v: &str, w: &str) -> Result<f64> {
    let (vi, wi) = (g.index_of(v)?, g.index_of(w)?);
    Ok(trek_count_idx(g, &path_counts(g), vi, wi))
}

/// All directed paths ending at `v` whose top satisfies `keep`, each listed
/// top first.
fn paths_into(g: &Admg, v: usize, keep: &[bool]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![v]];
    while let Some(rev) = stack.pop() {
        let top = *rev.last().expect("non-empty");
        if keep[top] {
            let mut p = rev.clone();
            p.reverse();
            out.push(p);
        }
        for &q in g.parents_idx(top) {
            let mut next = rev.clone();
            next.push(q);
            stack.push(next);
        }
    }
    out
}

struct IdxTrek {
    left: Vec<usize>,
    right: Vec<usize>,
    bidirected: bool,
}

fn enumerate_idx(g: &Admg, v: usize, w: usize, cap: usize) -> Result<Vec<IdxTrek>> {
    let counts = path_counts(g);
    let total = trek_count_idx(g, &counts, v, w);
    if total > cap as f64 {
        return Err(Error::TrekExplosion {
            from: g.label(v).to_string(),
            to: g.label(w).to_string(),
            count: total,
            cap,
        });
    }
    let n = g.len();
    let an_w = g.an_in(&[w], &g.full_mask());
    // a left top is useful if it is an ancestor of w or adjacent to one by a bidirected edge
    let keep_left: Vec<bool> = (0..n)
        .map(|s| an_w[s] || g.siblings_idx(s).iter().any(|&t| an_w[t]))
        .collect();
    let all = vec![true; n];
    let lefts = paths_into(g, v, &keep_left);
    let rights = paths_into(g, w, &all);
    let mut out = Vec::with_capacity(total as usize);
    for p in &lefts {
        for q in &rights {
            if p[0] == q[0] {
                out.push(IdxTrek { left: p.clone(), right: q.clone(), bidirected: false });
            } else if g.has_bidirected_idx(p[0], q[0]) {
                out.push(IdxTrek { left: p.clone(), right: q.clone(), bidirected: true });
            }
        }
    }
    let key = |t: &IdxTrek| -> (Vec<usize>, bool) {
        let mut seq: Vec<usize> = t.left.iter().rev().copied().collect();
        let skip = usize::from(!t.bidirected);
        seq.extend_from_slice(&t.right[skip..]);
        (seq, t.bidirected)
    };
    out.sort_by_cached_key(key);
    Ok(out)
}

/// Every trek between `v` and `w`, in lexicographic order of the walk's
/// vertex sequence. Fails with `TrekExplosion` above [`DEFAULT_TREK_CAP`].
pub fn enumerate_treks(g: &Admg, v: &str, w: &str) -> Result<Vec<Trek>> {
    enumerate_treks_capped(g, v, w, DEFAULT_TREK_CAP)
}

pub fn enumerate_treks_capped(g: &Admg, v: &str, w: &str, cap: usize) -> Result<Vec<Trek>> {
    let (vi, wi) = (g.index_of(v)?, g.index_of(w)?);
    let lab = |p: &[usize]| -> Vec<String> { p.iter().map(|&i| g.label(i).to_string()).collect() };
    Ok(enumerate_idx(g, vi, wi, cap)?
        .into_iter()
        .map(|t| {
            let source = if t.bidirected {
                TrekSource::Bidirected(g.label(t.left[0]).into(), g.label(t.right[0]).into())
            } else {
                TrekSource::Vertex(g.label(t.left[0]).into())
            };
            Trek { left: lab(&t.left), right: lab(&t.right), source }
        })
        .collect())
}

/// Σ assembled entry by entry as the sum of trek monomials.
pub fn covariance_via_treks(p: &SemParameters) -> Result<CovMatrix> {
    covariance_via_treks_capped(p, DEFAULT_TREK_CAP)
}

pub fn covariance_via_treks_capped(p: &SemParameters, cap: usize) -> Result<CovMatrix> {
    let g = p.graph();
    let n = g.len();
    let lam = p.lambda_matrix();
    let om = p.omega_matrix();
    let side = |path: &[usize]| -> f64 { path.windows(2).map(|e| lam[(e[0], e[1])]).product() };
    let mut s = DMatrix::<f64>::zeros(n, n);
    for v in 0..n {
        for w in v..n {
            let mut total = 0.0;
            for t in enumerate_idx(g, v, w, cap)? {
                total += om[(t.left[0], t.right[0])] * side(&t.left) * side(&t.right);
            }
            s[(v, w)] = total;
        }
    }
    linalg::symmetrize_upper(&mut s);
    CovMatrix::from_symmetric(g.vertices().to_vec(), s)
}
