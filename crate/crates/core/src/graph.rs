//! Acyclic directed mixed graphs and the purely graphical computations on them:
//! ancestry, districts, Markov blankets, fixability, induced subgraphs and
//! cut vertices.
//!
//! Vertices are identified by string labels. Internally each graph keeps its
//! labels sorted in natural order (see [`natural_cmp`]) and works with indices
//! into that order, so index order and label order always agree.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label ordering: two labels that both parse as integers compare
/// numerically, anything else compares as strings.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

/// A set of vertex labels. Equality is order independent: the labels are
/// kept sorted in natural order without duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<String>", into = "Vec<String>")]
pub struct VertexSet(Vec<String>);

impl VertexSet {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = labels.into_iter().map(Into::into).collect();
        v.sort_by(|a, b| natural_cmp(a, b));
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0
            .binary_search_by(|x| natural_cmp(x, label))
            .is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().filter(|x| !other.contains(x)).cloned().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().filter(|x| other.contains(x)).cloned().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|x| other.contains(x))
    }
}

impl From<Vec<String>> for VertexSet {
    fn from(v: Vec<String>) -> Self {
        VertexSet::new(v)
    }
}

impl From<VertexSet> for Vec<String> {
    fn from(s: VertexSet) -> Self {
        s.0
    }
}

impl<S: Into<String>> FromIterator<S> for VertexSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

/// A single edge, directed (`tail->head`) or bidirected (`u<->v`).
///
/// Bidirected edges are stored with their endpoints in natural label order,
/// so `2<->1` and `1<->2` are the same value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Edge {
    Directed { tail: String, head: String },
    Bidirected(String, String),
}

impl Edge {
    pub fn directed(tail: impl Into<String>, head: impl Into<String>) -> Self {
        Edge::Directed {
            tail: tail.into(),
            head: head.into(),
        }
    }

    pub fn bidirected(a: impl Into<String>, b: impl Into<String>) -> Self {
        let (a, b) = (a.into(), b.into());
        if natural_cmp(&a, &b) == Ordering::Greater {
            Edge::Bidirected(b, a)
        } else {
            Edge::Bidirected(a, b)
        }
    }

    pub fn endpoints(&self) -> (&str, &str) {
        match self {
            Edge::Directed { tail, head } => (tail, head),
            Edge::Bidirected(a, b) => (a, b),
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, Edge::Directed { .. })
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Directed { tail, head } => write!(f, "{tail}->{head}"),
            Edge::Bidirected(a, b) => write!(f, "{a}<->{b}"),
        }
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("edge `{s}` is not of the form a->b or a<->b"));
        if let Some((a, b)) = s.split_once("<->") {
            let (a, b) = (a.trim(), b.trim());
            if a.is_empty() || b.is_empty() {
                return Err(bad());
            }
            Ok(Edge::bidirected(a, b))
        } else if let Some((a, b)) = s.split_once("->") {
            let (a, b) = (a.trim(), b.trim());
            if a.is_empty() || b.is_empty() || b.contains("->") {
                return Err(bad());
            }
            Ok(Edge::directed(a, b))
        } else {
            Err(bad())
        }
    }
}

impl TryFrom<String> for Edge {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Edge> for String {
    fn from(e: Edge) -> Self {
        e.to_string()
    }
}

/// Acyclic directed mixed graph. Immutable; edits return new graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admg {
    labels: Vec<String>,
    pub(crate) index: HashMap<String, usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    siblings: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

impl Admg {
    /// Builds and validates a graph. Bidirected pairs are unordered; a
    /// directed and a bidirected edge may join the same pair.
    pub fn new<V, D, B, S>(vertices: V, directed: D, bidirected: B) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        D: IntoIterator<Item = (S, S)>,
        B: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        labels.sort_by(|a, b| natural_cmp(a, b));
        for w in labels.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].clone()));
            }
        }
        let index: HashMap<String, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let n = labels.len();
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownVertex(s.into()));

        let mut dir = BTreeSet::new();
        for (t, h) in directed {
            let (t, h): (String, String) = (t.into(), h.into());
            let (ti, hi) = (lookup(&t)?, lookup(&h)?);
            if ti == hi {
                return Err(Error::SelfLoop(t));
            }
            if !dir.insert((ti, hi)) {
                return Err(Error::DuplicateEdge(format!("{t}->{h}")));
            }
        }
        let mut bi = BTreeSet::new();
        for (a, b) in bidirected {
            let (a, b): (String, String) = (a.into(), b.into());
            let (ai, bi_) = (lookup(&a)?, lookup(&b)?);
            if ai == bi_ {
                return Err(Error::SelfLoop(a));
            }
            let key = (ai.min(bi_), ai.max(bi_));
            if !bi.insert(key) {
                return Err(Error::DuplicateEdge(
                    Edge::bidirected(a, b).to_string(),
                ));
            }
        }

        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        let mut siblings = vec![Vec::new(); n];
        for &(t, h) in &dir {
            parents[h].push(t);
            children[t].push(h);
        }
        for &(a, b) in &bi {
            siblings[a].push(b);
            siblings[b].push(a);
        }
        for list in parents.iter_mut().chain(children.iter_mut()).chain(siblings.iter_mut()) {
            list.sort_unstable();
        }

        let topo = match kahn(n, &parents, &children) {
            Ok(order) => order,
            Err(remaining) => {
                let cycle = find_cycle(&children, &remaining)
                    .into_iter()
                    .map(|i| labels[i].clone())
                    .collect();
                return Err(Error::CycleDetected { cycle });
            }
        };

        Ok(Admg {
            labels,
            index,
            parents,
            children,
            siblings,
            topo,
        })
    }

    /// Convenience constructor from edge strings such as `"1->2"` and `"2<->4"`.
    pub fn from_edge_strs<S: AsRef<str>, E: AsRef<str>>(vertices: &[S], edges: &[E]) -> Result<Self> {
        let edges: Vec<Edge> = edges
            .iter()
            .map(|e| e.as_ref().parse())
            .collect::<Result<_>>()?;
        Self::from_edges(vertices.iter().map(|v| v.as_ref().to_string()), edges)
    }

    pub fn from_edges<V, S>(vertices: V, edges: impl IntoIterator<Item = Edge>) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut dir = Vec::new();
        let mut bi = Vec::new();
        for e in edges {
            match e {
                Edge::Directed { tail, head } => dir.push((tail, head)),
                Edge::Bidirected(a, b) => bi.push((a, b)),
            }
        }
        Self::new(vertices.into_iter().map(Into::into), dir, bi)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet(self.labels.clone())
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn directed_edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (t, ch) in self.children.iter().enumerate() {
            for &h in ch {
                out.push((self.labels[t].clone(), self.labels[h].clone()));
            }
        }
        out
    }

    pub fn bidirected_edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (a, sib) in self.siblings.iter().enumerate() {
            for &b in sib.iter().filter(|&&b| b > a) {
                out.push((self.labels[a].clone(), self.labels[b].clone()));
            }
        }
        out
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.directed_edges()
            .into_iter()
            .map(|(t, h)| Edge::directed(t, h))
            .chain(
                self.bidirected_edges()
                    .into_iter()
                    .map(|(a, b)| Edge::bidirected(a, b)),
            )
            .collect()
    }

    pub fn num_directed(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn num_bidirected(&self) -> usize {
        self.siblings.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, edge: &Edge) -> bool {
        let (a, b) = edge.endpoints();
        let (Ok(a), Ok(b)) = (self.index_of(a), self.index_of(b)) else {
            return false;
        };
        match edge {
            Edge::Directed { .. } => self.has_directed_idx(a, b),
            Edge::Bidirected(..) => self.has_bidirected_idx(a, b),
        }
    }

    pub(crate) fn has_directed_idx(&self, t: usize, h: usize) -> bool {
        self.children[t].binary_search(&h).is_ok()
    }

    pub(crate) fn has_bidirected_idx(&self, a: usize, b: usize) -> bool {
        self.siblings[a].binary_search(&b).is_ok()
    }

    pub(crate) fn parents_idx(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub(crate) fn siblings_idx(&self, v: usize) -> &[usize] {
        &self.siblings[v]
    }

    pub(crate) fn topo_idx(&self) -> &[usize] {
        &self.topo
    }

    /// Returns a copy with `edge` removed.
    pub fn without_edge(&self, edge: &Edge) -> Result<Admg> {
        if !self.has_edge(edge) {
            return Err(Error::NoSuchEdge(edge.to_string()));
        }
        let edges = self.edges().into_iter().filter(|e| e != edge);
        Admg::from_edges(self.labels.iter().cloned(), edges)
    }

    /// Returns a copy with `edge` added.
    pub fn with_edge(&self, edge: &Edge) -> Result<Admg> {
        let (a, b) = edge.endpoints();
        let (ai, bi) = (self.index_of(a)?, self.index_of(b)?);
        if self.has_edge(edge) {
            return Err(Error::EdgeExists(edge.to_string()));
        }
        if ai == bi {
            return Err(Error::SelfLoop(a.to_string()));
        }
        if edge.is_directed() && self.is_ancestor_idx(bi, ai) {
            let cycle = self.directed_path_idx(bi, ai).expect("ancestor has a path");
            let mut cycle: Vec<String> = cycle.into_iter().map(|i| self.labels[i].clone()).collect();
            cycle.push(self.labels[bi].clone());
            return Err(Error::WouldCreateCycle {
                edge: edge.to_string(),
                cycle,
            });
        }
        let edges = self.edges().into_iter().chain(std::iter::once(edge.clone()));
        Admg::from_edges(self.labels.iter().cloned(), edges)
    }

    fn is_ancestor_idx(&self, x: usize, y: usize) -> bool {
        self.an_in(&[y], &self.full_mask())[x]
    }

    fn directed_path_idx(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &c in &self.children[v] {
                if !seen[c] {
                    seen[c] = true;
                    prev[c] = v;
                    queue.push_back(c);
                }
            }
        }
        None
    }

    // ---- index-level set computations; `within` restricts to an induced subgraph ----

    pub(crate) fn full_mask(&self) -> Vec<bool> {
        vec![true; self.len()]
    }

    pub(crate) fn mask_of(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.len()];
        for &i in set {
            m[i] = true;
        }
        m
    }

    fn closure<'a>(&'a self, start: &[usize], within: &[bool], step: impl Fn(usize) -> &'a [usize]) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = start.iter().copied().filter(|&s| within[s]).collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(v) = stack.pop() {
            for &u in step(v) {
                if within[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }

    pub(crate) fn an_in(&self, start: &[usize], within: &[bool]) -> Vec<bool> {
        self.closure(start, within, |v| &self.parents[v])
    }

    pub(crate) fn de_in(&self, start: &[usize], within: &[bool]) -> Vec<bool> {
        self.closure(start, within, |v| &self.children[v])
    }

    pub(crate) fn dis_in(&self, v: usize, within: &[bool]) -> Vec<bool> {
        self.closure(&[v], within, |u| &self.siblings[u])
    }

    pub(crate) fn mb_in(&self, v: usize, within: &[bool]) -> Vec<bool> {
        let dis = self.dis_in(v, within);
        let mut mb = dis.clone();
        for (d, _) in dis.iter().enumerate().filter(|(_, &x)| x) {
            for &p in &self.parents[d] {
                if within[p] {
                    mb[p] = true;
                }
            }
        }
        mb[v] = false;
        mb
    }

    pub(crate) fn fixable_in(&self, v: usize, within: &[bool]) -> bool {
        let de = self.de_in(&[v], within);
        let dis = self.dis_in(v, within);
        (0..self.len()).all(|i| i == v || !(de[i] && dis[i]))
    }

    pub(crate) fn mask_to_set(&self, mask: &[bool]) -> VertexSet {
        VertexSet(
            mask.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| self.labels[i].clone())
                .collect(),
        )
    }

    fn set_to_idx(&self, s: &VertexSet) -> Result<Vec<usize>> {
        s.iter().map(|l| self.index_of(l)).collect()
    }

    fn within_mask(&self, within: Option<&VertexSet>, v: usize) -> Result<Vec<bool>> {
        match within {
            None => Ok(self.full_mask()),
            Some(s) => {
                let m = self.mask_of(&self.set_to_idx(s)?);
                if !m[v] {
                    return Err(Error::VertexNotInSubset {
                        vertex: self.labels[v].clone(),
                    });
                }
                Ok(m)
            }
        }
    }

    // ---- label-level API ----

    /// Topological order; ties broken by ascending label.
    pub fn topological_order(&self) -> Vec<String> {
        self.topo.iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn parents(&self, s: &VertexSet) -> Result<VertexSet> {
        let idx = self.set_to_idx(s)?;
        let mut m = vec![false; self.len()];
        for v in idx {
            for &p in &self.parents[v] {
                m[p] = true;
            }
        }
        Ok(self.mask_to_set(&m))
    }

    pub fn children(&self, s: &VertexSet) -> Result<VertexSet> {
        let idx = self.set_to_idx(s)?;
        let mut m = vec![false; self.len()];
        for v in idx {
            for &c in &self.children[v] {
                m[c] = true;
            }
        }
        Ok(self.mask_to_set(&m))
    }

    /// Ancestors of `s`, including `s` itself.
    pub fn ancestors(&self, s: &VertexSet) -> Result<VertexSet> {
        let idx = self.set_to_idx(s)?;
        Ok(self.mask_to_set(&self.an_in(&idx, &self.full_mask())))
    }

    /// Descendants of `s`, including `s` itself.
    pub fn descendants(&self, s: &VertexSet) -> Result<VertexSet> {
        let idx = self.set_to_idx(s)?;
        Ok(self.mask_to_set(&self.de_in(&idx, &self.full_mask())))
    }

    /// All vertices that are not descendants of `v`; excludes `v`.
    pub fn nondescendants(&self, v: &str) -> Result<VertexSet> {
        let i = self.index_of(v)?;
        let de = self.de_in(&[i], &self.full_mask());
        Ok(self.mask_to_set(&de.iter().map(|&x| !x).collect::<Vec<_>>()))
    }

    pub fn district(&self, v: &str) -> Result<VertexSet> {
        self.district_within(v, None)
    }

    /// District of `v` in the induced subgraph on `within`.
    pub fn district_within(&self, v: &str, within: Option<&VertexSet>) -> Result<VertexSet> {
        let i = self.index_of(v)?;
        let w = self.within_mask(within, i)?;
        Ok(self.mask_to_set(&self.dis_in(i, &w)))
    }

    /// Markov blanket of `v` in the induced subgraph on `within`
    /// (all vertices when `None`). Never contains `v`.
    pub fn markov_blanket(&self, v: &str, within: Option<&VertexSet>) -> Result<VertexSet> {
        let i = self.index_of(v)?;
        let w = self.within_mask(within, i)?;
        Ok(self.mask_to_set(&self.mb_in(i, &w)))
    }

    /// `de(v) ∩ dis(v) = {v}` evaluated in the induced subgraph on `within`.
    pub fn is_fixable(&self, v: &str, within: Option<&VertexSet>) -> Result<bool> {
        let i = self.index_of(v)?;
        let w = self.within_mask(within, i)?;
        Ok(self.fixable_in(i, &w))
    }

    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<Admg> {
        let idx = self.set_to_idx(s)?;
        let keep = self.mask_of(&idx);
        let edges = self.edges().into_iter().filter(|e| {
            let (a, b) = e.endpoints();
            keep[self.index[a]] && keep[self.index[b]]
        });
        Admg::from_edges(s.iter().map(str::to_string), edges)
    }

    /// Vertices other than `a`, `b` whose deletion disconnects the
    /// directed-only subgraph induced on `an(b) ∩ de(a)` (edges treated as
    /// undirected). Returned in topological order. Every directed path from
    /// `a` to `b` passes through each of them.
    pub fn cut_vertices(&self, a: &str, b: &str) -> Result<Vec<String>> {
        let (ai, bi) = (self.index_of(a)?, self.index_of(b)?);
        Ok(self
            .cut_vertices_idx(ai, bi)?
            .into_iter()
            .map(|i| self.labels[i].clone())
            .collect())
    }

    pub(crate) fn cut_vertices_idx(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        let full = self.full_mask();
        let de = self.de_in(&[a], &full);
        if !de[b] {
            return Err(Error::NotADescendant {
                from: self.labels[a].clone(),
                to: self.labels[b].clone(),
            });
        }
        let an = self.an_in(&[b], &full);
        let span: Vec<bool> = (0..self.len()).map(|i| an[i] && de[i]).collect();
        let members: Vec<usize> = (0..self.len()).filter(|&i| span[i]).collect();
        let mut cuts = Vec::new();
        for &v in self.topo.iter().filter(|&&v| span[v] && v != a && v != b) {
            let mut rest = span.clone();
            rest[v] = false;
            if !self.undirected_connected(&members, &rest) {
                cuts.push(v);
            }
        }
        Ok(cuts)
    }

    fn undirected_connected(&self, members: &[usize], within: &[bool]) -> bool {
        let Some(&start) = members.iter().find(|&&m| within[m]) else {
            return true;
        };
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in self.children[v].iter().chain(&self.parents[v]) {
                if within[u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        members.iter().all(|&m| !within[m] || seen[m])
    }

    /// True iff no pair of vertices carries more than one edge.
    pub fn is_simple(&self) -> bool {
        self.siblings
            .iter()
            .enumerate()
            .all(|(a, sib)| sib.iter().all(|&b| !self.has_directed_idx(a, b) && !self.has_directed_idx(b, a)))
    }
}

fn kahn(n: usize, parents: &[Vec<usize>], children: &[Vec<usize>]) -> std::result::Result<Vec<usize>, Vec<bool>> {
    let mut indeg: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &c in &children[v] {
            indeg[c] -= 1;
            if indeg[c] == 0 {
                heap.push(Reverse(c));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err(indeg.iter().map(|&d| d > 0).collect())
    }
}

/// Finds one directed cycle among the vertices left over by Kahn's algorithm.
/// Every such vertex has a parent that is also left over, so walking parents
/// must eventually revisit a vertex.
fn find_cycle(children: &[Vec<usize>], remaining: &[bool]) -> Vec<usize> {
    let n = children.len();
    let mut parent_of = vec![usize::MAX; n];
    for (t, ch) in children.iter().enumerate() {
        for &h in ch {
            if remaining[t] && remaining[h] && parent_of[h] == usize::MAX {
                parent_of[h] = t;
            }
        }
    }
    let start = (0..n).find(|&v| remaining[v]).expect("cycle exists");
    let mut pos = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut v = start;
    while pos[v] == usize::MAX {
        pos[v] = walk.len();
        walk.push(v);
        v = parent_of[v];
    }
    let mut cycle: Vec<usize> = walk[pos[v]..].to_vec();
    cycle.reverse();
    // rotate so the smallest index leads, then close the loop
    let k = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &x)| x)
        .map(|(i, _)| i)
        .unwrap_or(0);
    cycle.rotate_left(k);
    cycle.push(cycle[0]);
    cycle
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn vs(s: &[&str]) -> VertexSet {
        VertexSet::new(s.iter().copied())
    }

    #[test]
    fn natural_order_sorts_numbers_numerically() {
        let s = VertexSet::new(["10", "9", "a", "1"]);
        assert_eq!(s.as_slice(), ["1", "9", "10", "a"]);
    }

    #[test]
    fn topological_order_examples() {
        assert_eq!(verma().topological_order(), ["1", "2", "3", "4"]);
        let g = Admg::new(["2", "1"], Vec::<(&str, &str)>::new(), vec![]).unwrap();
        assert_eq!(g.topological_order(), ["1", "2"]);
        let err = Admg::from_edge_strs(&["1", "2"], &["1->2", "2->1"]).unwrap_err();
        match err {
            Error::CycleDetected { cycle } => assert_eq!(cycle, ["1", "2", "1"]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn topological_order_breaks_ties_by_label() {
        let g = Admg::from_edge_strs(&["1", "2", "3", "4"], &["3->1", "4->2"]).unwrap();
        assert_eq!(g.topological_order(), ["3", "1", "4", "2"]);
    }

    #[test]
    fn cycle_report_names_a_real_cycle() {
        let err = Admg::from_edge_strs(&["a", "b", "c", "d"], &["a->b", "b->c", "c->d", "d->b"]).unwrap_err();
        let Error::CycleDetected { cycle } = err else { panic!() };
        assert_eq!(cycle, ["b", "c", "d", "b"]);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            Admg::from_edge_strs(&["1"], &["1->1"]),
            Err(Error::SelfLoop(_))
        ));
        assert!(matches!(
            Admg::from_edge_strs(&["1", "2"], &["1<->2", "2<->1"]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            Admg::from_edge_strs(&["1", "2"], &["1->3"]),
            Err(Error::UnknownVertex(_))
        ));
        assert!(matches!(
            Admg::new(["1", "1"], Vec::<(&str, &str)>::new(), vec![]),
            Err(Error::DuplicateVertex(_))
        ));
        // directed + bidirected on one pair is allowed
        assert!(Admg::from_edge_strs(&["1", "2"], &["1->2", "1<->2"]).is_ok());
    }

    #[test]
    fn ancestry_examples() {
        assert_eq!(verma().ancestors(&vs(&["4"])).unwrap(), vs(&["1", "2", "3", "4"]));
        let g = Admg::new(["v", "w"], Vec::<(&str, &str)>::new(), vec![]).unwrap();
        assert_eq!(g.ancestors(&vs(&["v"])).unwrap(), vs(&["v"]));
        assert_eq!(fig8().descendants(&vs(&["2"])).unwrap(), vs(&["2", "3", "4", "5", "6"]));
        assert_eq!(verma().nondescendants("3").unwrap(), vs(&["1", "2"]));
        assert_eq!(verma().parents(&vs(&["3"])).unwrap(), vs(&["1", "2"]));
        assert_eq!(verma().children(&vs(&["1"])).unwrap(), vs(&["2", "3"]));
        assert!(matches!(verma().ancestors(&vs(&["9"])), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn district_examples() {
        assert_eq!(verma().district("2").unwrap(), vs(&["2", "4"]));
        assert_eq!(verma().district("1").unwrap(), vs(&["1"]));
        assert_eq!(fig8().district("1").unwrap(), vs(&["1", "3", "4"]));
        assert_eq!(fig8().district("5").unwrap(), vs(&["2", "5", "6"]));
    }

    #[test]
    fn markov_blanket_examples() {
        let g = verma();
        assert_eq!(g.markov_blanket("4", Some(&vs(&["1", "2", "3", "4"]))).unwrap(), vs(&["1", "2", "3"]));
        assert_eq!(g.markov_blanket("3", Some(&vs(&["1", "2", "3"]))).unwrap(), vs(&["1", "2"]));
        let iso = Admg::new(["x"], Vec::<(&str, &str)>::new(), vec![]).unwrap();
        assert!(iso.markov_blanket("x", None).unwrap().is_empty());
        assert!(matches!(
            g.markov_blanket("4", Some(&vs(&["1", "2"]))),
            Err(Error::VertexNotInSubset { .. })
        ));
    }

    #[test]
    fn fixability_examples() {
        assert!(!verma().is_fixable("2", None).unwrap());
        assert!(verma().is_fixable("3", None).unwrap());
        assert!(!fig8().is_fixable("2", None).unwrap());
        // within an(3) the Verma vertex 2 becomes fixable
        assert!(verma().is_fixable("2", Some(&vs(&["1", "2", "3"]))).unwrap());
    }

    #[test]
    fn induced_subgraph_examples() {
        let g = verma();
        let sub = g.induced_subgraph(&vs(&["1", "2", "3"])).unwrap();
        assert_eq!(
            sub.edges(),
            vec![Edge::directed("1", "2"), Edge::directed("1", "3"), Edge::directed("2", "3")]
        );
        assert_eq!(g.induced_subgraph(&g.vertex_set()).unwrap(), g);
        assert!(g.induced_subgraph(&VertexSet::empty()).unwrap().is_empty());
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(fig8().cut_vertices("2", "6").unwrap(), ["3", "4"]);
        let e = Admg::from_edge_strs(&["a", "b"], &["a->b"]).unwrap();
        assert!(e.cut_vertices("a", "b").unwrap().is_empty());
        let chain = Admg::from_edge_strs(&["1", "2", "3", "4"], &["1->2", "2->3", "3->4"]).unwrap();
        assert_eq!(chain.cut_vertices("1", "4").unwrap(), ["2", "3"]);
        assert!(matches!(chain.cut_vertices("4", "1"), Err(Error::NotADescendant { .. })));
    }

    #[test]
    fn simplicity_examples() {
        assert!(!iv().is_simple());
        let dag = Admg::from_edge_strs(&["1", "2", "3"], &["1->2", "2->3", "1->3"]).unwrap();
        assert!(dag.is_simple());
        let treat = Admg::from_edge_strs(
            &["1", "2", "3", "4"],
            &["1->2", "2->3", "3->4", "1->3", "2->4", "1->4", "2<->4"],
        )
        .unwrap();
        assert!(!treat.is_simple());
    }

    #[test]
    fn edge_parsing() {
        assert_eq!("3->4".parse::<Edge>().unwrap(), Edge::directed("3", "4"));
        assert_eq!("4<->2".parse::<Edge>().unwrap(), Edge::bidirected("2", "4"));
        assert!("34".parse::<Edge>().is_err());
        assert!("->4".parse::<Edge>().is_err());
    }

    #[test]
    fn edge_edits() {
        let g = verma();
        let h = g.without_edge(&Edge::directed("3", "4")).unwrap();
        assert_eq!(h.num_directed(), 3);
        assert!(matches!(g.without_edge(&Edge::directed("4", "3")), Err(Error::NoSuchEdge(_))));
        assert!(matches!(g.with_edge(&Edge::directed("1", "2")), Err(Error::EdgeExists(_))));
        match g.with_edge(&Edge::directed("4", "1")) {
            Err(Error::WouldCreateCycle { cycle, .. }) => assert_eq!(cycle.first(), cycle.last()),
            other => panic!("unexpected {other:?}"),
        }
    }
}
