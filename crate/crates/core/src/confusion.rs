//! Confusion matrices.
//!
//! Orientation: **column j is true class j, row i is predicted class i**, so
//! `m[i][j]` is the mass of class-j observations predicted as class i. Column
//! sums are class sizes. Callers holding the transposed layout should call
//! [`ConfusionMatrix::transpose`] once on input.
//!
//! In the binary case class 1 (index 0) is the positive class: `m[0][0]` true
//! positives, `m[1][0]` false negatives, `m[0][1]` false positives.

use crate::densemat::{matrix_rank, Matrix, DEFAULT_RANK_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfusionMatrix {
    counts: Matrix,
    total: f64,
}

impl ConfusionMatrix {
    /// Validates a square, nonnegative, finite matrix with at least one positive entry.
    pub fn from_matrix(counts: Matrix) -> Result<Self> {
        let n = counts.n_rows();
        if !counts.is_square() {
            return Err(Error::NotSquare { rows: n, cols: counts.n_cols() });
        }
        if n < 2 {
            return Err(Error::TooFewClasses(n));
        }
        for i in 0..n {
            for j in 0..n {
                let v = counts[(i, j)];
                if v < 0.0 {
                    return Err(Error::NegativeEntry { row: i, col: j, value: v });
                }
            }
        }
        let total = counts.sum();
        if total <= 0.0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self { counts, total })
    }

    pub fn from_dense<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::RaggedRow { row: i, expected: n, got: row.len() });
            }
        }
        Self::from_matrix(Matrix::from_rows(rows)?)
    }

    /// Counts `(true, predicted)` label pairs. `n` defaults to one past the largest label.
    pub fn from_labels(true_labels: &[usize], pred_labels: &[usize], n: Option<usize>) -> Result<Self> {
        if true_labels.len() != pred_labels.len() {
            return Err(Error::LengthMismatch { true_len: true_labels.len(), pred_len: pred_labels.len() });
        }
        let n = n.unwrap_or_else(|| {
            true_labels.iter().chain(pred_labels).max().map_or(0, |&m| m + 1)
        });
        let mut counts = Matrix::zeros(n, n);
        for (position, (&t, &p)) in true_labels.iter().zip(pred_labels).enumerate() {
            for label in [t, p] {
                if label >= n {
                    return Err(Error::LabelOutOfRange { position, label, n });
                }
            }
            counts[(p, t)] += 1.0;
        }
        Self::from_matrix(counts)
    }

    /// Sums soft memberships per true class.
    ///
    /// Each membership row is rescaled to sum one before it is added to the
    /// column of its true class, so column sums equal class sizes.
    pub fn from_soft<R: AsRef<[f64]>>(true_labels: &[usize], memberships: &[R]) -> Result<Self> {
        if true_labels.len() != memberships.len() {
            return Err(Error::LengthMismatch { true_len: true_labels.len(), pred_len: memberships.len() });
        }
        let n = memberships.first().map_or(0, |r| r.as_ref().len());
        let mut counts = Matrix::zeros(n, n);
        for (row, (&t, weights)) in true_labels.iter().zip(memberships).enumerate() {
            let weights = weights.as_ref();
            if weights.len() != n {
                return Err(Error::MembershipArity { row, expected: n, got: weights.len() });
            }
            if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                return Err(Error::InvalidMembership { row });
            }
            if t >= n {
                return Err(Error::LabelOutOfRange { position: row, label: t, n });
            }
            let sum: f64 = weights.iter().sum();
            if sum <= 0.0 {
                return Err(Error::ZeroMembershipRow { row });
            }
            for (i, w) in weights.iter().enumerate() {
                counts[(i, t)] += w / sum;
            }
        }
        Self::from_matrix(counts)
    }

    /// Fails with [`Error::EmptyColumn`] unless every class has positive size.
    pub fn with_nonempty_columns(self) -> Result<Self> {
        self.check_nonempty_columns()?;
        Ok(self)
    }

    pub fn check_nonempty_columns(&self) -> Result<()> {
        match self.class_sizes().iter().position(|&s| s <= 0.0) {
            Some(j) => Err(Error::EmptyColumn(j)),
            None => Ok(()),
        }
    }

    pub fn n(&self) -> usize {
        self.counts.n_rows()
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    /// Entry at (predicted `i`, true `j`).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.counts[(i, j)]
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.counts
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.counts.to_rows()
    }

    /// Column sums `m_.j`.
    pub fn class_sizes(&self) -> Vec<f64> {
        self.counts.col_sums()
    }

    /// Row sums `m_i.`.
    pub fn predicted_sizes(&self) -> Vec<f64> {
        self.counts.row_sums()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.counts.diagonal()
    }

    pub fn trace(&self) -> f64 {
        self.counts.trace()
    }

    pub fn is_integer_valued(&self) -> bool {
        self.first_non_integer().is_none()
    }

    pub(crate) fn first_non_integer(&self) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j).fract() != 0.0)
    }

    pub fn rank(&self) -> usize {
        matrix_rank(&self.counts, DEFAULT_RANK_TOL)
    }

    pub fn transpose(&self) -> Self {
        Self { counts: self.counts.transpose(), total: self.total }
    }

    /// Adds `1/n` to every entry (`M + J_n / n`), which fills empty
    /// columns and zero diagonals. The total grows by `n`.
    pub fn smooth(&self) -> Self {
        let add = 1.0 / self.n() as f64;
        let counts = self.counts.map(|v| v + add);
        let total = counts.sum();
        Self { counts, total }
    }

    /// Smallest over largest class size.
    pub fn imbalance_ratio(&self) -> Result<f64> {
        self.check_nonempty_columns()?;
        let sizes = self.class_sizes();
        let min = sizes.iter().copied().fold(f64::INFINITY, f64::min);
        let max = sizes.iter().copied().fold(0.0, f64::max);
        Ok(min / max)
    }

    /// The estimate `D^{1/2} M D^{-1/2}` with `D = diag(m_.j)`:
    /// `m~_ij = m_ij * sqrt(m_.i / m_.j)`. The diagonal is unchanged; the
    /// total generally differs from the input total.
    pub fn estimate(&self) -> Result<Self> {
        self.check_nonempty_columns()?;
        let sizes = self.class_sizes();
        let n = self.n();
        let mut counts = self.counts.clone();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    counts[(i, j)] *= (sizes[i] / sizes[j]).sqrt();
                }
            }
        }
        let total = counts.sum();
        Ok(Self { counts, total })
    }
}
