//! Small dense-matrix kernel.
//!
//! Storage is row-major `f64`. The eigensolver is cyclic Jacobi, which is
//! plenty for confusion matrices (n is the number of classes) and needs no
//! external numerical library.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Convergence threshold for [`jacobi_eigenvalues`], relative to the Frobenius norm.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
/// Relative asymmetry accepted by the symmetric eigensolver.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Pivot threshold for [`matrix_rank`], relative to the largest entry.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major data. Every entry must be finite.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch { rows, cols, got: data.len() });
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: k / cols.max(1), col: k % cols.max(1) });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_cols {
                return Err(Error::RaggedRow { row: i, expected: n_cols, got: row.len() });
            }
            data.extend_from_slice(row);
        }
        Self::new(n_rows, n_cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        Self { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (s, v) in sums.iter_mut().zip(self.row(i)) {
                *s += v;
            }
        }
        sums
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> f64 {
        self.diagonal().iter().sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// Frobenius norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    acc += self[(i, j)] * self[(i, j)];
                }
            }
        }
        acc.sqrt()
    }

    /// Checks symmetry with `|s_ij - s_ji| <= rel_tol * max|s|`.
    pub fn check_symmetric(&self, rel_tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let bound = rel_tol * self.max_abs();
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let diff = (self[(i, j)] - self[(j, i)]).abs();
                if diff > bound {
                    return Err(Error::NotSymmetric { i, j, diff });
                }
            }
        }
        Ok(())
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        self.check_symmetric(rel_tol).is_ok()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    /// Sorted non-increasing.
    pub eigenvalues: Vec<f64>,
    pub sweeps_used: usize,
    /// Off-diagonal Frobenius norm of the final iterate.
    pub off_diag_norm: f64,
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Iteration stops once the off-diagonal Frobenius norm drops below
/// `tol * ||S||_F`. Exhausting `max_sweeps` yields [`Error::NoConvergence`]
/// carrying the partial result.
pub fn jacobi_eigenvalues(s: &Matrix, tol: f64, max_sweeps: usize) -> Result<EigenResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    s.check_symmetric(SYMMETRY_TOL)?;

    let n = s.n_rows();
    let mut a = s.clone();
    // Work on the exactly symmetric part.
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let threshold = tol * a.frobenius_norm();

    let mut sweeps = 0;
    let mut off = a.off_diagonal_norm();
    while off > threshold && sweeps < max_sweeps {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, p, q);
            }
        }
        off = a.off_diagonal_norm();
    }

    let mut eigenvalues = a.diagonal();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    let result = EigenResult { eigenvalues, sweeps_used: sweeps, off_diag_norm: off };
    if off > threshold {
        return Err(Error::NoConvergence(Box::new(result)));
    }
    Ok(result)
}

/// [`jacobi_eigenvalues`] with the default tolerance and sweep budget.
pub fn symmetric_eigenvalues(s: &Matrix) -> Result<Vec<f64>> {
    jacobi_eigenvalues(s, DEFAULT_EIGEN_TOL, DEFAULT_MAX_SWEEPS).map(|r| r.eigenvalues)
}

// One Jacobi rotation annihilating a[p][q]: A <- J^T A J.
fn rotate(a: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.n_rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
}

/// Numerical rank by Gaussian elimination with partial pivoting.
///
/// A pivot counts when its magnitude exceeds `tol * max|m_ij|`.
pub fn matrix_rank(m: &Matrix, tol: f64) -> usize {
    let (rows, cols) = (m.n_rows(), m.n_cols());
    if rows == 0 || cols == 0 {
        return 0;
    }
    let threshold = tol * m.max_abs();
    let mut work = m.clone();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let (pivot_row, pivot) = (rank..rows)
            .map(|r| (r, work[(r, col)].abs()))
            .fold((rank, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pivot <= threshold {
            continue;
        }
        if pivot_row != rank {
            for k in 0..cols {
                let tmp = work[(rank, k)];
                work[(rank, k)] = work[(pivot_row, k)];
                work[(pivot_row, k)] = tmp;
            }
        }
        for r in (rank + 1)..rows {
            let factor = work[(r, col)] / work[(rank, col)];
            if factor != 0.0 {
                for k in col..cols {
                    work[(r, k)] -= factor * work[(rank, k)];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant via LU with partial pivoting.
pub fn determinant(m: &Matrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.n_rows(), cols: m.n_cols() });
    }
    let n = m.n_rows();
    let mut work = m.clone();
    let mut det = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&x, &y| work[(x, col)].abs().total_cmp(&work[(y, col)].abs()))
            .unwrap_or(col);
        if work[(pivot_row, col)] == 0.0 {
            return Ok(0.0);
        }
        if pivot_row != col {
            for k in 0..n {
                let tmp = work[(col, k)];
                work[(col, k)] = work[(pivot_row, k)];
                work[(pivot_row, k)] = tmp;
            }
            det = -det;
        }
        let pivot = work[(col, col)];
        det *= pivot;
        for r in (col + 1)..n {
            let factor = work[(r, col)] / pivot;
            for k in col..n {
                work[(r, k)] -= factor * work[(col, k)];
            }
        }
    }
    Ok(det)
}
