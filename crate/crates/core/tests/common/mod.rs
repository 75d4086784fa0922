#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semedge_core::{random_admg, random_parameters, Admg, CovMatrix, GraphSpec, SemParameters};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn spec(n: usize) -> GraphSpec {
    GraphSpec {
        n,
        ..GraphSpec::default()
    }
}

/// A random graph with between `lo` and `hi` vertices and its parameters.
pub fn instance(seed: u64, lo: usize, hi: usize) -> SemParameters {
    let mut r = rng(seed);
    let n = r.random_range(lo..=hi);
    let spec = GraphSpec {
        p_directed: r.random_range(0.2..0.6),
        p_bidirected: r.random_range(0.1..0.4),
        ..spec(n)
    };
    let g = random_admg(&spec, &mut r);
    random_parameters(&g, &mut r).expect("parameters")
}

pub fn redraw(g: &Admg, seed: u64) -> SemParameters {
    random_parameters(g, &mut rng(seed)).expect("parameters")
}

/// Σ = (I − Λ)^{-T} Ω (I − Λ)^{-1} via a general matrix inverse.
pub fn oracle_cov(p: &SemParameters) -> CovMatrix {
    let n = p.graph().len();
    let t = (DMatrix::identity(n, n) - p.lambda_matrix()).try_inverse().expect("I - Lambda invertible");
    let mut s = t.transpose() * p.omega_matrix() * &t;
    for i in 0..n {
        for j in 0..i {
            s[(i, j)] = s[(j, i)];
        }
    }
    CovMatrix::new(p.graph().vertices().to_vec(), s).expect("covariance")
}

pub fn oracle_path_sums(p: &SemParameters) -> DMatrix<f64> {
    let n = p.graph().len();
    (DMatrix::identity(n, n) - p.lambda_matrix()).try_inverse().expect("invertible")
}

pub fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(1.0)
}

pub fn rel_cov(a: &CovMatrix, b: &CovMatrix) -> f64 {
    a.max_rel_diff(b).expect("same labels")
}

/// Plain adjacency-list view of a graph, used by the brute-force oracles.
pub struct Plain {
    pub n: usize,
    pub dir: Vec<Vec<bool>>,
    pub bi: Vec<Vec<bool>>,
}

impl Plain {
    pub fn of(g: &Admg) -> Plain {
        let n = g.len();
        let at = |l: &str| g.index_of(l).unwrap();
        let mut dir = vec![vec![false; n]; n];
        let mut bi = vec![vec![false; n]; n];
        for (t, h) in g.directed_edges() {
            dir[at(&t)][at(&h)] = true;
        }
        for (a, b) in g.bidirected_edges() {
            bi[at(&a)][at(&b)] = true;
            bi[at(&b)][at(&a)] = true;
        }
        Plain { n, dir, bi }
    }

    /// Directed reachability restricted to `keep`, by repeated relaxation.
    pub fn reach(&self, from: usize, keep: &[bool]) -> Vec<bool> {
        let mut r = vec![false; self.n];
        if !keep[from] {
            return r;
        }
        r[from] = true;
        loop {
            let mut changed = false;
            for u in 0..self.n {
                for v in 0..self.n {
                    if r[u] && self.dir[u][v] && keep[v] && !r[v] {
                        r[v] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return r;
            }
        }
    }

    pub fn ancestors(&self, v: usize, keep: &[bool]) -> Vec<bool> {
        (0..self.n).map(|u| keep[u] && self.reach(u, keep)[v]).collect()
    }

    /// District via union-find over bidirected edges inside `keep`.
    pub fn district(&self, v: usize, keep: &[bool]) -> Vec<bool> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let nx = p[x];
                p[x] = r;
                x = nx;
            }
            r
        }
        for a in 0..self.n {
            for b in 0..self.n {
                if self.bi[a][b] && keep[a] && keep[b] {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                }
            }
        }
        let root = find(&mut parent, v);
        (0..self.n).map(|u| keep[u] && find(&mut parent, u) == root).collect()
    }

    pub fn fixable(&self, v: usize, keep: &[bool]) -> bool {
        let de = self.reach(v, keep);
        let dis = self.district(v, keep);
        (0..self.n).all(|u| u == v || !(de[u] && dis[u]))
    }

    pub fn markov_blanket(&self, v: usize, keep: &[bool]) -> Vec<bool> {
        let dis = self.district(v, keep);
        let mut mb = dis.clone();
        for d in 0..self.n {
            if dis[d] {
                for p in 0..self.n {
                    if self.dir[p][d] && keep[p] {
                        mb[p] = true;
                    }
                }
            }
        }
        mb[v] = false;
        mb
    }
}

pub fn labels_of(g: &Admg, mask: &[bool]) -> Vec<String> {
    let mut out: Vec<String> = (0..g.len()).filter(|&i| mask[i]).map(|i| g.label(i).to_string()).collect();
    out.sort_by(|a, b| semedge_core::natural_cmp(a, b));
    out
}

pub fn all_subsets(items: &[String]) -> Vec<Vec<String>> {
    (0..1u32 << items.len())
        .map(|m| (0..items.len()).filter(|&i| m >> i & 1 == 1).map(|i| items[i].clone()).collect())
        .collect()
}

/// Every ADMG on `n` labeled vertices: each unordered pair carries no
/// directed edge or one in either direction, and independently a bidirected
/// edge or not. Cyclic choices are skipped.
pub fn exhaustive(n: usize, mut visit: impl FnMut(&Admg)) {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let k = pairs.len();
    let dir_choices = 3usize.pow(k as u32);
    for code in 0..dir_choices {
        let mut c = code;
        let mut directed = Vec::new();
        for &(i, j) in &pairs {
            match c % 3 {
                1 => directed.push((labels[i].clone(), labels[j].clone())),
                2 => directed.push((labels[j].clone(), labels[i].clone())),
                _ => {}
            }
            c /= 3;
        }
        for bmask in 0..1usize << k {
            let bidirected: Vec<(String, String)> = pairs
                .iter()
                .enumerate()
                .filter(|(t, _)| bmask >> t & 1 == 1)
                .map(|(_, &(i, j))| (labels[i].clone(), labels[j].clone()))
                .collect();
            if let Ok(g) = Admg::new(labels.clone(), directed.clone(), bidirected) {
                visit(&g);
            }
        }
    }
}
