//! Eigenvalue analysis of a confusion matrix.
//!
//! From a confusion matrix `M` with class sizes `m_.j` (column sums):
//!
//! * `P = M D^{-1}`: column-stochastic, `p_ij = m_ij / m_.j`;
//! * `B = (P + P^T) / 2`: symmetric, so its spectrum `lambda` is real;
//! * `A = Q^{-1/2} B Q^{-1/2}` with `Q = diag(B)`: unit diagonal, same inertia
//!   as `B`. Gershgorin discs of `A` all centre on 1, giving the interval
//!   `[1 - r, 1 + r]` with `r` the largest off-diagonal row sum of `A`.
//!
//! The EVE score is the base-`n` Shannon entropy of the positive eigenvalues
//! of `B` normalised to sum one: 1 for a perfect classifier, 0 when a single
//! eigenvalue carries everything.

use crate::confusion::ConfusionMatrix;
use crate::densemat::{symmetric_eigenvalues, Matrix};
use crate::error::{Error, Result};

/// An eigenvalue of `B` counts as positive when it exceeds `POSITIVE_CUTOFF * n`.
pub const POSITIVE_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DerivedMatrices {
    pub p: Matrix,
    pub b: Matrix,
    pub a: Matrix,
    pub m_tilde: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Eigenvalues of `B`, descending.
    pub lambdas: Vec<f64>,
    /// Eigenvalues of `A`, descending.
    pub mus: Vec<f64>,
    pub thr_min: f64,
    pub thr_max: f64,
    pub diagonally_dominant: bool,
    /// Number of eigenvalues of `B` above the positive cutoff.
    pub n_positive: usize,
    pub eve: f64,
}

pub fn column_stochastic(m: &ConfusionMatrix) -> Result<Matrix> {
    m.check_nonempty_columns()?;
    let sizes = m.class_sizes();
    let n = m.n();
    let mut p = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            p[(i, j)] = m.get(i, j) / sizes[j];
        }
    }
    Ok(p)
}

pub fn symmetrize(p: &Matrix) -> Matrix {
    let n = p.n_rows();
    let mut b = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] = 0.5 * (p[(i, j)] + p[(j, i)]);
        }
    }
    b
}

/// `a_ij = b_ij / sqrt(b_ii b_jj)`; needs a strictly positive diagonal.
pub fn diagonal_normalize(b: &Matrix) -> Result<Matrix> {
    let q = b.diagonal();
    if let Some(i) = q.iter().position(|&v| v <= 0.0) {
        return Err(Error::ZeroDiagonal(i));
    }
    let n = b.n_rows();
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = if i == j { 1.0 } else { b[(i, j)] / (q[i] * q[j]).sqrt() };
        }
    }
    Ok(a)
}

pub fn derive(m: &ConfusionMatrix) -> Result<DerivedMatrices> {
    let p = column_stochastic(m)?;
    let b = symmetrize(&p);
    let a = diagonal_normalize(&b)?;
    let m_tilde = m.estimate()?.as_matrix().clone();
    Ok(DerivedMatrices { p, b, a, m_tilde })
}

/// Every column's diagonal exceeds the sum of its off-diagonal entries.
pub fn is_diagonally_dominant(p: &Matrix) -> bool {
    let n = p.n_rows();
    (0..n).all(|j| {
        let off: f64 = (0..n).filter(|&i| i != j).map(|i| p[(i, j)]).sum();
        p[(j, j)] > off
    })
}

/// `(1 - r, 1 + r)` where `r` is the largest off-diagonal row sum of `A`.
pub fn gershgorin_bounds(a: &Matrix) -> (f64, f64) {
    let n = a.n_rows();
    let r = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).map(|j| a[(i, j)]).sum::<f64>())
        .fold(0.0, f64::max);
    (1.0 - r, 1.0 + r)
}

/// Eigenvalues of `B`, descending. Unlike [`spectrum`] this works with zero
/// diagonal entries.
pub fn b_eigenvalues(m: &ConfusionMatrix) -> Result<Vec<f64>> {
    let b = symmetrize(&column_stochastic(m)?);
    symmetric_eigenvalues(&b)
}

pub fn spectrum(m: &ConfusionMatrix) -> Result<Spectrum> {
    let p = column_stochastic(m)?;
    let b = symmetrize(&p);
    let a = diagonal_normalize(&b)?;
    let lambdas = symmetric_eigenvalues(&b)?;
    let mus = symmetric_eigenvalues(&a)?;
    let (thr_min, thr_max) = gershgorin_bounds(&a);
    let n_positive = positive_eigenvalues(&lambdas).count();
    let eve = eve_from_eigenvalues(&lambdas);
    Ok(Spectrum {
        lambdas,
        mus,
        thr_min,
        thr_max,
        diagonally_dominant: is_diagonally_dominant(&p),
        n_positive,
        eve,
    })
}

pub fn eve(m: &ConfusionMatrix) -> Result<f64> {
    Ok(eve_from_eigenvalues(&b_eigenvalues(m)?))
}

fn positive_eigenvalues(lambdas: &[f64]) -> impl Iterator<Item = f64> + '_ {
    let cutoff = POSITIVE_CUTOFF * lambdas.len() as f64;
    lambdas.iter().copied().filter(move |&l| l > cutoff)
}

/// Entropy of the positive eigenvalues (normalised to sum one) in base
/// `n = lambdas.len()`. Zero or one positive eigenvalue gives 0.
pub fn eve_from_eigenvalues(lambdas: &[f64]) -> f64 {
    let n = lambdas.len();
    let positive: Vec<f64> = positive_eigenvalues(lambdas).collect();
    if n < 2 || positive.len() < 2 {
        return 0.0;
    }
    let total: f64 = positive.iter().sum();
    // -sum eta ln eta with eta = l / total, rearranged to keep I_n exact.
    let weighted: f64 = positive.iter().map(|&l| l * l.ln()).sum();
    let entropy = total.ln() - weighted / total;
    (entropy / (n as f64).ln()).clamp(0.0, 1.0)
}

/// Closed-form eigenvalues `(lambda1, lambda2)` of `B` for a 2x2 column-stochastic `P`.
pub fn binary_eigenvalues(p: &Matrix) -> Result<(f64, f64)> {
    if p.n_rows() != 2 || p.n_cols() != 2 {
        return Err(Error::NotBinary { rows: p.n_rows(), cols: p.n_cols() });
    }
    let (p11, p12, p21, p22) = (p[(0, 0)], p[(0, 1)], p[(1, 0)], p[(1, 1)]);
    let half_sum = 0.5 * (p11 + p22);
    let radius = 0.5 * ((p11 - p22).powi(2) + (p12 + p21).powi(2)).sqrt();
    Ok((half_sum + radius, half_sum - radius))
}

/// The `p11` at which `lambda2 = 0` for a given `p22`: `p22 + 2 - sqrt(8 p22)`.
pub fn lambda2_zero_boundary(p22: f64) -> Result<f64> {
    if !(p22 > 0.0 && p22 <= 1.0) {
        return Err(Error::InvalidProbability(p22));
    }
    Ok(p22 + 2.0 - (8.0 * p22).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixture;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn stochastic_2x2(p11: f64, p22: f64) -> Matrix {
        Matrix::from_rows(&[[p11, 1.0 - p22], [1.0 - p11, p22]]).unwrap()
    }

    #[test]
    fn derive_mb_is_symmetric_case() {
        let d = derive(&Fixture::Mb.matrix()).unwrap();
        let expected = Matrix::from_rows(&[[0.9, 0.1], [0.1, 0.9]]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(close(d.p[(i, j)], expected[(i, j)], 1e-15));
            }
        }
        assert_eq!(d.p, d.b);
    }

    #[test]
    fn derive_identity() {
        let eye = ConfusionMatrix::from_dense(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        let d = derive(&eye).unwrap();
        assert_eq!(d.p, Matrix::identity(3));
        assert_eq!(d.b, Matrix::identity(3));
        assert_eq!(d.a, Matrix::identity(3));
    }

    #[test]
    fn derive_m1_off_diagonal() {
        let d = derive(&Fixture::M1.matrix()).unwrap();
        let want = (30.0 / 160.0 + 15.0 / 140.0) / 2.0;
        assert!(close(d.b[(0, 1)], want, 1e-15));
        assert!(close(want, 0.14732, 1e-5));
    }

    #[test]
    fn derive_errors() {
        let empty_col = ConfusionMatrix::from_dense(&[[1.0, 0.0], [1.0, 0.0]]).unwrap();
        assert_eq!(derive(&empty_col), Err(Error::EmptyColumn(1)));
        assert_eq!(derive(&Fixture::M7.matrix()), Err(Error::ZeroDiagonal(3)));
        assert!(derive(&Fixture::M7.matrix().smooth()).is_ok());
    }

    #[test]
    fn derived_invariants_on_fixtures() {
        for f in Fixture::ALL {
            let m = f.matrix();
            let p = column_stochastic(&m).unwrap();
            for (j, s) in p.col_sums().iter().enumerate() {
                assert!(close(*s, 1.0, 1e-12), "{} column {j}", f.name());
            }
            let b = symmetrize(&p);
            assert_eq!(b, b.transpose());
            if let Ok(a) = diagonal_normalize(&b) {
                assert!(a.diagonal().iter().all(|&d| close(d, 1.0, 1e-12)));
            }
        }
    }

    #[test]
    fn diagonal_dominance_examples() {
        let p = |f: Fixture| column_stochastic(&f.matrix()).unwrap();
        assert!(is_diagonally_dominant(&p(Fixture::Mb)));
        assert!(!is_diagonally_dominant(&p(Fixture::Ma)));
        assert!(is_diagonally_dominant(&p(Fixture::M5)));
    }

    #[test]
    fn gershgorin_examples() {
        let bounds = |m: &ConfusionMatrix| gershgorin_bounds(&derive(m).unwrap().a);
        let (lo, hi) = bounds(&Fixture::Mb.matrix());
        assert!(close(lo, 0.888, 1e-3) && close(hi, 1.111, 1e-3));
        let (lo, hi) = bounds(&Fixture::M5.matrix());
        assert!(close(lo, 0.279, 1e-3) && close(hi, 1.721, 1e-3));
        assert_eq!(gershgorin_bounds(&Matrix::identity(4)), (1.0, 1.0));
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum(&Fixture::M3.matrix()).unwrap();
        assert!(close(s.lambdas[0], 1.000, 1e-3) && close(s.lambdas[1], 0.948, 1e-3));
        assert!(close(s.thr_min, 0.973, 1e-3) && close(s.thr_max, 1.026, 1e-3));

        let s = spectrum(&Fixture::M6.matrix()).unwrap();
        for (got, want) in s.lambdas.iter().zip([1.149, 1.033, 1.000, 0.185, 0.171]) {
            assert!(close(*got, want, 1e-3), "{:?}", s.lambdas);
        }

        let s = spectrum(&Fixture::M7.matrix().smooth()).unwrap();
        assert!(close(s.mus[4], -1.65, 1e-2), "{:?}", s.mus);
        assert!(close(s.lambdas[4], -0.104, 1e-3), "{:?}", s.lambdas);
        assert_eq!(s.n_positive, 4);
    }

    #[test]
    fn eve_extremes() {
        for n in 2..=10 {
            let eye = ConfusionMatrix::from_matrix(Matrix::identity(n)).unwrap();
            assert_eq!(eve(&eye).unwrap(), 1.0);
            let ones = ConfusionMatrix::from_matrix(Matrix::filled(n, n, 1.0)).unwrap();
            assert_eq!(eve(&ones).unwrap(), 0.0);
        }
    }

    #[test]
    fn eve_published_values() {
        let cases = [
            (Fixture::M1, 0.976),
            (Fixture::M2, 0.952),
            (Fixture::M5, 0.883),
            (Fixture::M8, 0.996),
            (Fixture::M9, 0.912),
        ];
        for (f, want) in cases {
            let got = eve(&f.matrix()).unwrap();
            assert!(close(got, want, 1e-3), "{}: {got}", f.name());
        }
        // zero diagonal is fine for eve, which only needs B
        let m7 = eve(&Fixture::M7.matrix()).unwrap();
        assert!(close(m7, 0.77604, 5e-6), "{m7}");
        let m7s = eve(&Fixture::M7.matrix().smooth()).unwrap();
        assert!(close(m7s, 0.77539, 5e-6), "{m7s}");
    }

    #[test]
    fn eve_ignores_negative_and_tiny_eigenvalues() {
        assert_eq!(eve_from_eigenvalues(&[1.0, -0.8]), 0.0);
        assert_eq!(eve_from_eigenvalues(&[1.0, 1e-13]), 0.0);
        assert_eq!(eve_from_eigenvalues(&[-1.0, -2.0]), 0.0);
        let with_negative = eve_from_eigenvalues(&[1.0, 1.0, -0.5]);
        assert!(close(with_negative, 2f64.ln() / 3f64.ln(), 1e-15));
    }

    #[test]
    fn binary_closed_form_examples() {
        let (l1, l2) = binary_eigenvalues(&stochastic_2x2(0.9, 0.9)).unwrap();
        assert!(close(l1, 1.0, 1e-15) && close(l2, 0.8, 1e-15));
        let (_, l2) = binary_eigenvalues(&stochastic_2x2(0.5, 0.5)).unwrap();
        assert!(close(l2, 0.0, 1e-15));
        let (l1, l2) = binary_eigenvalues(&stochastic_2x2(0.9, 0.1)).unwrap();
        assert!(close(l1 * l2, -0.16, 1e-12));
        assert!(matches!(binary_eigenvalues(&Matrix::identity(3)), Err(Error::NotBinary { .. })));
    }

    #[test]
    fn lambda2_boundary_examples() {
        assert!(close(lambda2_zero_boundary(0.5).unwrap(), 0.5, 1e-15));
        assert!(close(lambda2_zero_boundary(1.0).unwrap(), 3.0 - 8f64.sqrt(), 1e-15));
        assert!(close(lambda2_zero_boundary(1.0).unwrap(), 0.1716, 1e-4));
        assert_eq!(lambda2_zero_boundary(0.0), Err(Error::InvalidProbability(0.0)));
        assert!(lambda2_zero_boundary(1.5).is_err());
        for k in 1..=100 {
            let p22 = k as f64 / 100.0;
            let p11 = lambda2_zero_boundary(p22).unwrap();
            let (_, l2) = binary_eigenvalues(&stochastic_2x2(p11, p22)).unwrap();
            assert!(l2.abs() < 1e-9, "p22={p22}: lambda2={l2}");
        }
    }
}
