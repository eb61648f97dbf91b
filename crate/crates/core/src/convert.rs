//! Multi-class to binary conversions.
//!
//! Pair counting classifies each of the `m(m-1)/2` observation pairs by
//! whether the two share a cell (`a`), only a row (`b`), only a column (`c`),
//! or neither (`d`), giving the 2x2 matrix `[[a, b], [c, d]]`.

use crate::confusion::ConfusionMatrix;
use crate::error::{Error, Result};

/// Largest number of observations [`pairs_binary_oracle`] will enumerate.
pub const ORACLE_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryCounts {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub m_pairs: f64,
}

impl BinaryCounts {
    pub fn to_confusion(&self) -> Result<ConfusionMatrix> {
        ConfusionMatrix::from_dense(&[[self.a, self.b], [self.c, self.d]])
    }
}

fn check_countable(m: &ConfusionMatrix) -> Result<()> {
    if let Some((row, col)) = m.first_non_integer() {
        return Err(Error::NonInteger { row, col });
    }
    if m.total() < 2.0 {
        return Err(Error::TooFewObservations);
    }
    Ok(())
}

/// `(sum of squared cells, sum of squared row sums, sum of squared column sums)`
fn square_sums(m: &ConfusionMatrix) -> (f64, f64, f64) {
    let sq = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    (sq(m.as_matrix().as_slice()), sq(&m.predicted_sizes()), sq(&m.class_sizes()))
}

pub fn pairs_binary(m: &ConfusionMatrix) -> Result<BinaryCounts> {
    check_countable(m)?;
    let total = m.total();
    let (cells, rows, cols) = square_sums(m);
    let m_pairs = total * (total - 1.0) / 2.0;
    let a = (cells - total) / 2.0;
    let b = (rows - total) / 2.0 - a;
    let c = (cols - total) / 2.0 - a;
    let d = m_pairs - a - b - c;
    Ok(BinaryCounts { a, b, c, d, m_pairs })
}

/// The variant that drops the `-m/2` self-pair corrections from `b`, `c`
/// and `d`. Kept only to show that it disagrees with [`pairs_binary`].
pub fn pairs_binary_literal(m: &ConfusionMatrix) -> Result<BinaryCounts> {
    check_countable(m)?;
    let total = m.total();
    let (cells, rows, cols) = square_sums(m);
    let m_pairs = total * (total - 1.0) / 2.0;
    let a = (cells - total) / 2.0;
    let b = rows / 2.0 - a;
    let c = cols / 2.0 - a;
    let d = m_pairs - (rows + cols) / 2.0 + a;
    Ok(BinaryCounts { a, b, c, d, m_pairs })
}

/// Brute force: expands `m` into observations and classifies every pair.
pub fn pairs_binary_oracle(m: &ConfusionMatrix) -> Result<BinaryCounts> {
    check_countable(m)?;
    let total = m.total() as u64;
    if total > ORACLE_LIMIT {
        return Err(Error::TooManyObservations(total));
    }
    let n = m.n();
    let mut obs = Vec::with_capacity(total as usize);
    for i in 0..n {
        for j in 0..n {
            obs.extend(std::iter::repeat_n((i, j), m.get(i, j) as usize));
        }
    }
    let (mut a, mut b, mut c, mut d) = (0u64, 0u64, 0u64, 0u64);
    for (k, &(r1, c1)) in obs.iter().enumerate() {
        for &(r2, c2) in &obs[k + 1..] {
            match (r1 == r2, c1 == c2) {
                (true, true) => a += 1,
                (true, false) => b += 1,
                (false, true) => c += 1,
                (false, false) => d += 1,
            }
        }
    }
    Ok(BinaryCounts {
        a: a as f64,
        b: b as f64,
        c: c as f64,
        d: d as f64,
        m_pairs: (total * (total - 1) / 2) as f64,
    })
}

/// Collapses `m` to class `j` (0-based) against the rest:
/// `[[m_jj, sum_k m_jk], [sum_k m_kj, rest]]` over `k != j`.
pub fn one_vs_rest(m: &ConfusionMatrix, j: usize) -> Result<ConfusionMatrix> {
    let n = m.n();
    if j >= n {
        return Err(Error::ClassOutOfRange { index: j, n });
    }
    let hit = m.get(j, j);
    let row_rest = m.predicted_sizes()[j] - hit;
    let col_rest = m.class_sizes()[j] - hit;
    let rest: f64 = (0..n)
        .filter(|&i| i != j)
        .flat_map(|i| (0..n).filter(move |&k| k != j).map(move |k| (i, k)))
        .map(|(i, k)| m.get(i, k))
        .sum();
    ConfusionMatrix::from_dense(&[[hit, row_rest], [col_rest, rest]])
}
