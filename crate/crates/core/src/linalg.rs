//! Small dense kernels. Every reduction runs in ascending index order so results
//! are bitwise reproducible.

use alloc::vec;
use alloc::vec::Vec;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    a.iter().map(|v| v * v).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(norm_sq(a))
}

/// `y += alpha * x`
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn nnz(a: &[f64]) -> usize {
    a.iter().filter(|v| **v != 0.0).count()
}

pub fn all_finite(a: &[f64]) -> bool {
    a.iter().all(|v| v.is_finite())
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Panics when `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Self { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn tr_mul_vec(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, yi) in y.iter().enumerate() {
            axpy(*yi, self.row(i), &mut out);
        }
        out
    }

    /// Upper estimate of `λ_max(AᵀA)`.
    ///
    /// Power iteration gives the Rayleigh quotient `θ` for a unit vector `v`; for a
    /// symmetric matrix some eigenvalue lies within `‖AᵀAv − θv‖` of `θ`, so that
    /// residual is added on top of the converged estimate.
    pub fn gram_spectral_bound(&self, max_iter: usize, tol: f64) -> f64 {
        let n = self.cols;
        if n == 0 || self.rows == 0 {
            return 0.0;
        }
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + i as f64 / n as f64).collect();
        let nv = norm(&v);
        v.iter_mut().for_each(|e| *e /= nv);
        let mut theta = 0.0;
        let mut residual = f64::INFINITY;
        for _ in 0..max_iter {
            let w = self.tr_mul_vec(&self.mul_vec(&v));
            let new_theta = dot(&v, &w);
            residual = norm(&sub(&w, &v.iter().map(|e| new_theta * e).collect::<Vec<_>>()));
            let nw = norm(&w);
            if nw == 0.0 {
                return 0.0;
            }
            let done = libm::fabs(new_theta - theta) <= tol * libm::fabs(new_theta);
            theta = new_theta;
            v = w.iter().map(|e| e / nw).collect();
            if done && residual <= 1e-6 * theta {
                break;
            }
        }
        theta + residual
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_bound_of_diagonal() {
        let m = Matrix::from_row_major(3, 3, vec![1.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 2.0]);
        let l = m.gram_spectral_bound(10_000, 1e-14);
        assert!(l >= 9.0 - 1e-9, "{l}");
        assert!(l <= 9.0 + 1e-3, "{l}");
    }

    #[test]
    fn transpose_product() {
        let m = Matrix::from_row_major(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(m.mul_vec(&[1.0, 0.0, -1.0]), vec![-2.0, -2.0]);
        assert_eq!(m.tr_mul_vec(&[1.0, 1.0]), vec![5.0, 7.0, 9.0]);
    }
}
