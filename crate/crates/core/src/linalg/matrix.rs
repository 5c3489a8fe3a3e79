use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

#[allow(non_camel_case_types)]
pub type c64 = Complex64;

/// Dense complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<c64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![c64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries, checking shape and finiteness.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<c64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: (rows, cols),
                found: (data.len(), 1),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from rows of `(re, im)` pairs.
    pub fn from_rows(rows: &[&[(f64, f64)]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: (rows.len(), cols),
                found: (rows.len(), rows.iter().map(|r| r.len()).max().unwrap_or(0)),
            });
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&(re, im)| c64::new(re, im)))
            .collect();
        Self::from_vec(rows.len(), cols, data)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = c64::new(d, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[c64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[c64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<c64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> c64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Columns `start..end` as a new matrix.
    pub fn columns(&self, start: usize, end: usize) -> Self {
        let mut out = Self::zeros(self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                out[(i, j - start)] = self[(i, j)];
            }
        }
        out
    }

    /// Top-left `r × c` block.
    pub fn leading_block(&self, r: usize, c: usize) -> Self {
        let mut out = Self::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                out[(i, j)] = self[(i, j)];
            }
        }
        out
    }

    /// Right-multiplies by `diag(d)`, i.e. scales column `j` by `d[j]`.
    pub fn scale_columns(&self, d: &[f64]) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] *= d[j];
            }
        }
        out
    }

    /// Left-multiplies by `diag(d)`.
    pub fn scale_rows(&self, d: &[f64]) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] *= d[i];
            }
        }
        out
    }

    /// `‖A − Aᴴ‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        libm::sqrt(acc)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(c64, c64) -> c64) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = c64;

    fn index(&self, (i, j): (usize, usize)) -> &c64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut c64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == c64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Square complex matrix that is exactly Hermitian.
///
/// Construction checks `‖A − Aᴴ‖_F ≤ 1e-12·max(1, ‖A‖_F)` and then stores
/// the symmetrised `(A + Aᴴ)/2`, so the diagonal is exactly real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(ComplexMatrix);

impl HermitianMatrix {
    pub const ASYMMETRY_TOL: f64 = 1e-12;

    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, Self::ASYMMETRY_TOL)
    }

    /// Like [`HermitianMatrix::new`] with a caller-chosen relative tolerance.
    pub fn with_tolerance(m: ComplexMatrix, rel_tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: (m.rows(), m.rows()),
                found: m.shape(),
            });
        }
        let scale = m.frobenius_norm().max(1.0);
        let asymmetry = m.hermitian_defect() / scale;
        if !(asymmetry <= rel_tol) {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(Self::symmetrize(&m))
    }

    /// `(A + Aᴴ)/2` without any tolerance check.
    pub fn symmetrize(m: &ComplexMatrix) -> Self {
        assert!(m.is_square(), "symmetrize needs a square matrix");
        let n = m.rows();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            out[(i, i)] = c64::new(m[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let v = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        Self(out)
    }

    pub fn zeros(n: usize) -> Self {
        Self(ComplexMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(ComplexMatrix::identity(n))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_real_diagonal(diag))
    }

    /// `M Mᴴ`.
    pub fn outer_gram(m: &ComplexMatrix) -> Self {
        Self::symmetrize(&(m * &m.adjoint()))
    }

    /// `Mᴴ M`.
    pub fn inner_gram(m: &ComplexMatrix) -> Self {
        Self::symmetrize(&(&m.adjoint() * m))
    }

    /// `X · self · Xᴴ`, symmetrised.
    pub fn congruence(&self, x: &ComplexMatrix) -> Self {
        Self::symmetrize(&(&(x * &self.0) * &x.adjoint()))
    }

    /// `V diag(w) Vᴴ`.
    pub fn from_spectrum(vectors: &ComplexMatrix, values: &[f64]) -> Self {
        Self::symmetrize(&(&vectors.scale_columns(values) * &vectors.adjoint()))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.scale(s))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self(&self.0 + &rhs.0)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self(&self.0 - &rhs.0)
    }

    pub fn add_identity(&self, s: f64) -> Self {
        let mut m = self.0.clone();
        for i in 0..self.dim() {
            m[(i, i)] += s;
        }
        Self(m)
    }

    /// Real inner product `Re Tr(self · rhs)`.
    pub fn inner(&self, rhs: &Self) -> f64 {
        self.0
            .as_slice()
            .iter()
            .zip(rhs.0.as_slice())
            .map(|(a, b)| (a * b.conj()).re)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.as_slice().iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = c64;

    fn index(&self, idx: (usize, usize)) -> &c64 {
        &self.0[idx]
    }
}

impl AsRef<ComplexMatrix> for HermitianMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}
