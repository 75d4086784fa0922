//! Small dense helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

/// Relative pivot threshold for accepting a matrix as positive definite.
pub const PD_PIVOT_TOL: f64 = 1e-10;

/// Lower-triangular Cholesky factor that refuses pivots at or below
/// `PD_PIVOT_TOL` times the largest diagonal entry.
#[derive(Clone, Debug)]
pub struct Cholesky {
    l: DMatrix<f64>,
}

impl Cholesky {
    pub fn new(m: &DMatrix<f64>) -> Option<Self> {
        let n = m.nrows();
        debug_assert_eq!(n, m.ncols());
        if n == 0 {
            return Some(Cholesky { l: DMatrix::zeros(0, 0) });
        }
        let max_diag = (0..n).map(|i| m[(i, i)]).fold(f64::NEG_INFINITY, f64::max);
        if !(max_diag > 0.0) || !max_diag.is_finite() {
            return None;
        }
        let floor = PD_PIVOT_TOL * max_diag;
        let mut l = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            let mut d = m[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if !(d > floor) {
                return None;
            }
            let d = d.sqrt();
            l[(j, j)] = d;
            for i in j + 1..n {
                let mut s = m[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / d;
            }
        }
        Some(Cholesky { l })
    }

    pub fn factor(&self) -> &DMatrix<f64> {
        &self.l
    }

    /// Solves `m x = rhs` for a matrix right-hand side.
    pub fn solve(&self, rhs: &DMatrix<f64>) -> DMatrix<f64> {
        let y = self
            .l
            .solve_lower_triangular(rhs)
            .expect("factor has nonzero diagonal");
        self.l
            .tr_solve_lower_triangular(&y)
            .expect("factor has nonzero diagonal")
    }

    pub fn solve_vec(&self, rhs: &DVector<f64>) -> DVector<f64> {
        let y = self
            .l
            .solve_lower_triangular(rhs)
            .expect("factor has nonzero diagonal");
        self.l
            .tr_solve_lower_triangular(&y)
            .expect("factor has nonzero diagonal")
    }
}

pub fn is_positive_definite(m: &DMatrix<f64>) -> bool {
    Cholesky::new(m).is_some()
}

/// Smallest eigenvalue of a symmetric matrix; `+inf` for the empty matrix.
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return f64::INFINITY;
    }
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Copies the upper triangle onto the lower one.
pub fn symmetrize_upper(m: &mut DMatrix<f64>) {
    for i in 0..m.nrows() {
        for j in 0..i {
            m[(i, j)] = m[(j, i)];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_reproduces_matrix() {
        let m = DMatrix::from_row_slice(3, 3, &[4.0, 2.0, 0.4, 2.0, 3.0, 0.5, 0.4, 0.5, 2.0]);
        let c = Cholesky::new(&m).unwrap();
        let back = c.factor() * c.factor().transpose();
        assert!((back - &m).abs().max() < 1e-14);
        let x = c.solve(&DMatrix::identity(3, 3));
        assert!((&m * x - DMatrix::<f64>::identity(3, 3)).abs().max() < 1e-12);
    }

    #[test]
    fn rejects_singular_and_indefinite() {
        let singular = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(!is_positive_definite(&singular));
        let indefinite = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(!is_positive_definite(&indefinite));
        assert!(!is_positive_definite(&DMatrix::zeros(2, 2)));
        assert!(is_positive_definite(&DMatrix::zeros(0, 0)));
    }

    #[test]
    fn min_eigenvalue_of_diagonal() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 0.5, 2.0]));
        assert!((min_eigenvalue(&m) - 0.5).abs() < 1e-14);
    }
}
