//! Label-indexed covariance matrices, conditional covariances and
//! regression coefficients.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{natural_cmp, VertexSet};
use crate::linalg::{self, Cholesky};

/// Absolute tolerance used when validating symmetry of supplied matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A symmetric matrix indexed by vertex labels.
///
/// Positive definiteness is not enforced on construction (interventional
/// results may legitimately fail it); use [`CovMatrix::is_positive_definite`].
#[derive(Clone, Debug, PartialEq)]
pub struct CovMatrix {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    values: DMatrix<f64>,
}

impl CovMatrix {
    /// Validates squareness, label uniqueness and symmetry (within
    /// [`SYMMETRY_TOL`]), then stores the exactly symmetrized matrix.
    pub fn new(labels: Vec<String>, values: DMatrix<f64>) -> Result<Self> {
        let n = labels.len();
        if values.nrows() != values.ncols() {
            return Err(Error::Parse(format!(
                "covariance matrix is {}x{}, expected square",
                values.nrows(),
                values.ncols()
            )));
        }
        if values.nrows() != n {
            return Err(Error::WrongDimension {
                expected: n,
                got: values.nrows(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let x = values[(i, j)];
                if !x.is_finite() {
                    return Err(Error::Parse(format!("non-finite covariance entry at ({},{})", labels[i], labels[j])));
                }
                if j > i && (x - values[(j, i)]).abs() > SYMMETRY_TOL {
                    return Err(Error::Parse(format!(
                        "covariance not symmetric at ({},{}): {} vs {}",
                        labels[i], labels[j], x, values[(j, i)]
                    )));
                }
            }
        }
        let mut values = values;
        linalg::symmetrize_upper(&mut values);
        Self::from_symmetric(labels, values)
    }

    /// Builds from a matrix already known to be exactly symmetric.
    pub(crate) fn from_symmetric(labels: Vec<String>, values: DMatrix<f64>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        Ok(CovMatrix { labels, index, values })
    }

    pub fn identity(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        Self::from_symmetric(labels, DMatrix::identity(n, n))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.values
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn get(&self, v: &str, w: &str) -> Result<f64> {
        Ok(self.values[(self.index_of(v)?, self.index_of(w)?)])
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }

    /// Same matrix with rows and columns permuted to `labels`.
    pub fn reordered(&self, labels: &[String]) -> Result<CovMatrix> {
        self.check_labels(labels)?;
        let idx: Vec<usize> = labels.iter().map(|l| self.index[l]).collect();
        let n = idx.len();
        let values = DMatrix::from_fn(n, n, |i, j| self.values[(idx[i], idx[j])]);
        Self::from_symmetric(labels.to_vec(), values)
    }

    /// Errors with `LabelMismatch` unless `labels` is a permutation of ours.
    pub fn check_labels(&self, labels: &[String]) -> Result<()> {
        let mut missing: Vec<String> = self
            .labels
            .iter()
            .filter(|l| !labels.contains(l))
            .cloned()
            .collect();
        let mut extra: Vec<String> = labels
            .iter()
            .filter(|l| !self.index.contains_key(*l))
            .cloned()
            .collect();
        if missing.is_empty() && extra.is_empty() && labels.len() == self.labels.len() {
            return Ok(());
        }
        missing.sort_by(|a, b| natural_cmp(a, b));
        extra.sort_by(|a, b| natural_cmp(a, b));
        Err(Error::LabelMismatch { missing, extra })
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.values)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.values)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Largest absolute entrywise difference, after aligning labels.
    pub fn max_abs_diff(&self, other: &CovMatrix) -> Result<f64> {
        let other = other.reordered(&self.labels)?;
        Ok((&self.values - &other.values).abs().max())
    }

    /// Largest entrywise difference divided by the larger of the two
    /// matrices' largest absolute entries.
    pub fn max_rel_diff(&self, other: &CovMatrix) -> Result<f64> {
        let scale = self.max_abs_entry().max(other.max_abs_entry());
        let d = self.max_abs_diff(other)?;
        Ok(if scale > 0.0 { d / scale } else { d })
    }

    fn indices(&self, s: &VertexSet) -> Result<Vec<usize>> {
        s.iter().map(|l| self.index_of(l)).collect()
    }

    /// `σ_vw − Σ_vS Σ_SS⁻¹ Σ_Sw`.
    pub fn conditional_cov(&self, v: &str, w: &str, cond: &VertexSet) -> Result<f64> {
        let (vi, wi) = (self.index_of(v)?, self.index_of(w)?);
        let s = self.indices(cond)?;
        self.conditional_cov_idx(vi, wi, &s)
    }

    pub(crate) fn conditional_cov_idx(&self, v: usize, w: usize, s: &[usize]) -> Result<f64> {
        if s.is_empty() {
            return Ok(self.values[(v, w)]);
        }
        let k = s.len();
        let ss = DMatrix::from_fn(k, k, |i, j| self.values[(s[i], s[j])]);
        let chol = Cholesky::new(&ss).ok_or_else(|| Error::SingularConditioningBlock {
            block: s.iter().map(|&i| self.labels[i].clone()).collect(),
        })?;
        let sw = DMatrix::from_fn(k, 1, |i, _| self.values[(s[i], w)]);
        let x = chol.solve(&sw);
        let correction: f64 = (0..k).map(|i| self.values[(v, s[i])] * x[(i, 0)]).sum();
        Ok(self.values[(v, w)] - correction)
    }

    /// `β_vw·S = σ_vw·S / σ_vv·S`: the coefficient of `v` when regressing
    /// `w` on `v` and `S`.
    pub fn regression_coef(&self, v: &str, w: &str, cond: &VertexSet) -> Result<f64> {
        let (vi, wi) = (self.index_of(v)?, self.index_of(w)?);
        let s = self.indices(cond)?;
        self.regression_coef_idx(vi, wi, &s)
    }

    pub(crate) fn regression_coef_idx(&self, v: usize, w: usize, s: &[usize]) -> Result<f64> {
        let num = self.conditional_cov_idx(v, w, s)?;
        let den = self.conditional_cov_idx(v, v, s)?;
        let scale = self.values[(v, v)].abs().max(f64::MIN_POSITIVE);
        if !(den > linalg::PD_PIVOT_TOL * scale) {
            let mut block: Vec<String> = s.iter().map(|&i| self.labels[i].clone()).collect();
            block.push(self.labels[v].clone());
            return Err(Error::SingularConditioningBlock { block });
        }
        Ok(num / den)
    }
}
