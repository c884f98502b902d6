//! Dense complex matrices and the Hermitian eigensolver contract used by the
//! rest of the crate.
//!
//! Wherever matrices appear in scenario files or reports, complex entries
//! serialize as two-element `[re, im]` arrays and matrices as row-major
//! nested arrays of those pairs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense complex matrix with finite entries.
///
/// This is the substrate for density matrices, effects and unitaries; it
/// enforces only finiteness and shape, the physical invariants live in the
/// wrapping types.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| complex_to_raw(self.inner[(i, j)])).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl ComplexMatrix {
    /// Build from row-major entries. Fails on a shape/entry-count mismatch or
    /// any non-finite entry.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        Self::from_dmatrix(DMatrix::from_row_slice(rows, cols, &entries))
    }

    /// Wrap an existing matrix, checking every entry is finite.
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if let Some(index) = m
            .as_slice()
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { inner: m })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn nrows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.inner.is_square()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.inner
    }

    /// Largest entrywise deviation from Hermitian symmetry, `max |m - m†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let adj = self.inner.adjoint();
        max_abs_diff(&self.inner, &adj)
    }
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Contract: eigenvalues are real and returned in ascending order together
/// with the matching orthonormal eigenvectors as columns. Backed by
/// nalgebra's self-adjoint solver; callers must pass a (numerically)
/// Hermitian matrix.
pub fn hermitian_eigen(m: &DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let n = m.nrows();
    assert!(m.is_square(), "hermitian_eigen requires a square matrix");
    if n == 1 {
        return (vec![m[(0, 0)].re], DMatrix::identity(1, 1));
    }
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let n = m.nrows();
    if n == 1 {
        return vec![m[(0, 0)].re];
    }
    let mut values: Vec<f64> = m
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Positive-semidefinite square root via eigendecomposition. Eigenvalues
/// below zero (tolerated PSD noise) are clamped to zero.
pub fn psd_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (values, vectors) = hermitian_eigen(m);
    let n = m.nrows();
    let mut out = DMatrix::zeros(n, n);
    for (k, &v) in values.iter().enumerate() {
        let root = v.max(0.0).sqrt();
        if root == 0.0 {
            continue;
        }
        let col: DVector<Complex64> = vectors.column(k).into();
        out += (&col * col.adjoint()).scale(root);
    }
    out
}

// Wire form: row-major nested arrays of [re, im] pairs. Integers are accepted
// on input so TOML authors can write `[1, 0]`.

#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum Num {
    Int(i64),
    Float(f64),
}

impl From<Num> for f64 {
    fn from(n: Num) -> f64 {
        match n {
            Num::Int(i) => i as f64,
            Num::Float(f) => f,
        }
    }
}

pub(crate) fn complex_from_raw(pair: [Num; 2]) -> Complex64 {
    let [re, im] = pair;
    Complex64::new(re.into(), im.into())
}

pub(crate) fn complex_to_raw(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Deserialize)]
pub(crate) struct RawMatrix(Vec<Vec<[Num; 2]>>);

impl TryFrom<RawMatrix> for ComplexMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        let rows = raw.0.len();
        let cols = raw.0.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows * cols);
        for row in raw.0 {
            if row.len() != cols {
                return Err(Error::EntryCount {
                    rows,
                    cols,
                    got: row.len(),
                });
            }
            entries.extend(row.into_iter().map(complex_from_raw));
        }
        ComplexMatrix::from_rows(rows, cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = ComplexMatrix::from_rows(1, 2, vec![c(1.0, 0.0), c(f64::NAN, 0.0)]);
        assert!(matches!(err, Err(Error::NonFinite { index: 1 })));
    }

    #[test]
    fn rejects_entry_count_mismatch() {
        let err = ComplexMatrix::from_rows(2, 2, vec![c(1.0, 0.0)]);
        assert!(matches!(err, Err(Error::EntryCount { .. })));
    }

    #[test]
    fn eigen_sorted_ascending_and_reconstructs() {
        // Pauli-Y-like Hermitian matrix, eigenvalues -1 and 1.
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
        let (values, vectors) = hermitian_eigen(&m);
        assert_abs_diff_eq!(values[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(values[1], 1.0, epsilon = 1e-12);
        let mut recon = DMatrix::zeros(2, 2);
        for k in 0..2 {
            let col: DVector<Complex64> = vectors.column(k).into();
            recon += (&col * col.adjoint()).scale(values[k]);
        }
        assert!(max_abs_diff(&m, &recon) < 1e-12);
    }

    #[test]
    fn eigen_handles_one_dimensional_matrices() {
        let m = DMatrix::from_row_slice(1, 1, &[c(0.5, 0.0)]);
        let (values, vectors) = hermitian_eigen(&m);
        assert_eq!(values, vec![0.5]);
        assert_eq!(vectors[(0, 0)], c(1.0, 0.0));
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0.75, 0.0), c(0.25, 0.0), c(0.25, 0.0), c(0.75, 0.0)]);
        let root = psd_sqrt(&m);
        assert!(max_abs_diff(&(&root * &root), &m) < 1e-12);
    }
}
