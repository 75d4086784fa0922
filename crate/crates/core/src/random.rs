//! Seeded random graphs and parameters for tests, benchmarks and the CLI.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Admg;
use crate::linalg;
use crate::sem::SemParameters;

/// Shape of a random graph. Vertices are labeled `1..=n`; edges are drawn
/// independently per pair with the given probabilities and truncated at the
/// caps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub n: usize,
    pub p_directed: f64,
    pub p_bidirected: f64,
    pub max_directed: usize,
    pub max_bidirected: usize,
}

impl Default for GraphSpec {
    fn default() -> Self {
        GraphSpec {
            n: 8,
            p_directed: 0.3,
            p_bidirected: 0.15,
            max_directed: 12,
            max_bidirected: 6,
        }
    }
}

pub const COEF_RANGE: f64 = 0.4;
pub const VARIANCE_RANGE: (f64, f64) = (1.0, 2.0);
pub const MAX_ATTEMPTS: usize = 100;

pub fn random_admg<R: Rng + ?Sized>(spec: &GraphSpec, rng: &mut R) -> Admg {
    let labels: Vec<String> = (1..=spec.n).map(|i| i.to_string()).collect();
    let mut order: Vec<usize> = (0..spec.n).collect();
    order.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..spec.n {
        for j in i + 1..spec.n {
            pairs.push((i, j));
        }
    }
    pairs.shuffle(rng);
    let mut directed = Vec::new();
    let mut bidirected = Vec::new();
    for &(i, j) in &pairs {
        if directed.len() < spec.max_directed && rng.random_bool(spec.p_directed) {
            directed.push((labels[order[i]].clone(), labels[order[j]].clone()));
        }
        if bidirected.len() < spec.max_bidirected && rng.random_bool(spec.p_bidirected) {
            bidirected.push((labels[order[i]].clone(), labels[order[j]].clone()));
        }
    }
    Admg::new(labels.clone(), directed, bidirected).expect("edges follow a random order, so the graph is acyclic")
}

/// Coefficients and off-diagonal error covariances uniform on
/// `[-COEF_RANGE, COEF_RANGE]`, error variances uniform on `VARIANCE_RANGE`;
/// draws whose error covariance is not positive definite are redrawn.
pub fn random_parameters<R: Rng + ?Sized>(g: &Admg, rng: &mut R) -> Result<SemParameters> {
    let n = g.len();
    for _ in 0..MAX_ATTEMPTS {
        let mut lam = DMatrix::zeros(n, n);
        for (t, h) in g.directed_edges() {
            lam[(g.index_of(&t)?, g.index_of(&h)?)] = rng.random_range(-COEF_RANGE..=COEF_RANGE);
        }
        let mut om = DMatrix::zeros(n, n);
        for i in 0..n {
            om[(i, i)] = rng.random_range(VARIANCE_RANGE.0..=VARIANCE_RANGE.1);
        }
        for (a, b) in g.bidirected_edges() {
            let (i, j) = (g.index_of(&a)?, g.index_of(&b)?);
            let x = rng.random_range(-COEF_RANGE..=COEF_RANGE);
            om[(i, j)] = x;
            om[(j, i)] = x;
        }
        if linalg::is_positive_definite(&om) {
            return SemParameters::from_dense(g.clone(), lam, om);
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

/// A random graph and parameters from one seed.
pub fn random_instance(spec: &GraphSpec, seed: u64) -> Result<SemParameters> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_admg(spec, &mut rng);
    random_parameters(&g, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_instance(&GraphSpec::default(), 42).unwrap();
        let b = random_instance(&GraphSpec::default(), 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn density_zero_is_edgeless() {
        let spec = GraphSpec { p_directed: 0.0, p_bidirected: 0.0, ..GraphSpec::default() };
        let p = random_instance(&spec, 1).unwrap();
        assert_eq!(p.graph().edges().len(), 0);
        let om = p.omega_matrix();
        assert!((0..8).all(|i| (0..8).all(|j| i == j || om[(i, j)] == 0.0)));
    }

    #[test]
    fn caps_hold() {
        let spec = GraphSpec { p_directed: 1.0, p_bidirected: 1.0, ..GraphSpec::default() };
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_admg(&spec, &mut rng);
            assert_eq!(g.num_directed(), 12);
            assert_eq!(g.num_bidirected(), 6);
        }
    }

    #[test]
    fn parameters_are_in_range() {
        for seed in 0..20 {
            let p = random_instance(&GraphSpec::default(), seed).unwrap();
            assert!(p.lambda_matrix().iter().all(|x| x.abs() <= COEF_RANGE));
            assert!(p.covariance().unwrap().is_positive_definite());
        }
    }
}
