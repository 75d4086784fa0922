//! Sample matrices: Gaussian simulation, covariance estimation and
//! column standardization.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::cov::CovMatrix;
use crate::error::{Error, Result};
use crate::graph::natural_cmp;
use crate::linalg::{self, Cholesky};

/// `n × |V|` observations with vertex-labeled columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    labels: Vec<String>,
    rows: DMatrix<f64>,
}

impl Dataset {
    pub fn new(labels: Vec<String>, rows: DMatrix<f64>) -> Result<Self> {
        if rows.nrows() == 0 {
            return Err(Error::EmptyDataset);
        }
        if rows.ncols() != labels.len() {
            return Err(Error::InvalidDataset(format!(
                "{} columns but {} labels",
                rows.ncols(),
                labels.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        if let Some(k) = rows.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidDataset(format!(
                "non-finite value in row {}, column {}",
                k % rows.nrows() + 1,
                labels[k / rows.nrows()]
            )));
        }
        Ok(Dataset { labels, rows })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> &DMatrix<f64> {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.nrows()
    }

    pub fn column(&self, label: &str) -> Result<DVector<f64>> {
        let j = self
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))?;
        Ok(self.rows.column(j).into_owned())
    }

    /// Columns permuted to `labels`; `LabelMismatch` unless the label sets agree.
    pub fn reordered(&self, labels: &[String]) -> Result<Dataset> {
        let mut missing: Vec<String> = labels.iter().filter(|l| !self.labels.contains(l)).cloned().collect();
        let mut extra: Vec<String> = self.labels.iter().filter(|l| !labels.contains(l)).cloned().collect();
        if !missing.is_empty() || !extra.is_empty() {
            missing.sort_by(|a, b| natural_cmp(a, b));
            extra.sort_by(|a, b| natural_cmp(a, b));
            return Err(Error::LabelMismatch { missing, extra });
        }
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| self.labels.iter().position(|m| m == l).expect("checked"))
            .collect();
        let rows = DMatrix::from_fn(self.n(), idx.len(), |i, j| self.rows[(i, idx[j])]);
        Ok(Dataset { labels: labels.to_vec(), rows })
    }
}

/// Draws `n` zero-mean Gaussian rows with covariance `cov`, deterministically
/// for a given seed.
pub fn simulate(cov: &CovMatrix, n: usize, seed: u64) -> Result<Dataset> {
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    let chol = Cholesky::new(cov.matrix()).ok_or_else(|| Error::NotPositiveDefinite { what: "Sigma".into() })?;
    let p = cov.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = DMatrix::<f64>::from_fn(n, p, |_, _| StandardNormal.sample(&mut rng));
    let rows = z * chol.factor().transpose();
    Dataset::new(cov.labels().to_vec(), rows)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CovEstimator {
    /// Subtract column means, divide by `n − 1`.
    #[default]
    Centered,
    /// Assume mean zero, divide by `n`.
    ZeroMean,
}

pub fn sample_cov(d: &Dataset, estimator: CovEstimator) -> Result<CovMatrix> {
    let n = d.n();
    if n < 2 {
        return Err(Error::TooFewRows(n));
    }
    let x = match estimator {
        CovEstimator::Centered => {
            let mut x = d.rows.clone();
            for mut col in x.column_iter_mut() {
                let m = col.mean();
                col.add_scalar_mut(-m);
            }
            x
        }
        CovEstimator::ZeroMean => d.rows.clone(),
    };
    let denom = match estimator {
        CovEstimator::Centered => (n - 1) as f64,
        CovEstimator::ZeroMean => n as f64,
    };
    let mut s = x.transpose() * &x / denom;
    linalg::symmetrize_upper(&mut s);
    CovMatrix::from_symmetric(d.labels.clone(), s)
}

/// Per-column location and scale removed by [`standardize`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Standardization {
    pub labels: Vec<String>,
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
}

impl Standardization {
    pub fn apply(&self, d: &Dataset) -> Result<Dataset> {
        let d = d.reordered(&self.labels)?;
        let mut rows = d.rows.clone();
        for (j, mut col) in rows.column_iter_mut().enumerate() {
            col.add_scalar_mut(-self.means[j]);
            col /= self.sds[j];
        }
        Dataset::new(self.labels.clone(), rows)
    }

    pub fn invert(&self, d: &Dataset) -> Result<Dataset> {
        let d = d.reordered(&self.labels)?;
        let mut rows = d.rows.clone();
        for (j, mut col) in rows.column_iter_mut().enumerate() {
            col *= self.sds[j];
            col.add_scalar_mut(self.means[j]);
        }
        Dataset::new(self.labels.clone(), rows)
    }
}

/// Centers each column and scales it to unit sample variance.
pub fn standardize(d: &Dataset) -> Result<(Dataset, Standardization)> {
    let n = d.n();
    if n < 2 {
        return Err(Error::TooFewRows(n));
    }
    let mut means = Vec::with_capacity(d.labels.len());
    let mut sds = Vec::with_capacity(d.labels.len());
    for (j, col) in d.rows.column_iter().enumerate() {
        let m = col.mean();
        let var = col.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64;
        if !(var > 0.0) {
            return Err(Error::InvalidDataset(format!("column {} is constant", d.labels[j])));
        }
        means.push(m);
        sds.push(var.sqrt());
    }
    let st = Standardization { labels: d.labels.clone(), means, sds };
    Ok((st.apply(d)?, st))
}
