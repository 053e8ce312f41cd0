//! Dense complex matrices and the Hermitian newtype built on top of them.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a real matrix from rows. All rows must have equal length.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: format!("{cols} columns"),
                found: format!("{} columns", bad.len()),
            });
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| C64::new(rows[i][j], 0.0)))
    }

    pub fn diag(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::new(values[i], 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.cols),
                found: format!("{} rows", rhs.rows),
            });
        }
        Ok(self.mul_unchecked(rhs))
    }

    pub(crate) fn mul_unchecked(&self, rhs: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute imaginary part over all entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    pub(crate) fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                found: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub(crate) fn zip_with(&self, other: &Matrix, f: impl Fn(C64, C64) -> C64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    /// Frobenius distance between two matrices of equal shape.
    pub fn distance(&self, other: &Matrix) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>12.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A square complex matrix equal to its own conjugate transpose.
///
/// Symmetry is exact: every constructor either checks it or enforces it by
/// mirroring the lower triangle, so downstream code never sees a matrix
/// whose `(i, j)` and `(j, i)` entries disagree in the last bit.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix(Matrix);

impl HermitianMatrix {
    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(Matrix::zeros(n, n))
    }

    pub fn diag(values: &[f64]) -> Self {
        Self(Matrix::diag(values))
    }

    pub fn scalar(c: f64) -> Self {
        Self::diag(&[c])
    }

    /// Real symmetric matrix from rows; requires exact symmetry.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_matrix_exact(Matrix::from_real_rows(rows)?)
    }

    /// Accepts `m` only if it is exactly Hermitian.
    pub fn from_matrix_exact(m: Matrix) -> Result<Self> {
        Self::from_matrix(m, 0.0)
    }

    /// Accepts `m` if `|m_ij - conj(m_ji)| <= tol * max(1, ||m||_F)` for all
    /// entries, then returns its Hermitian part.
    pub fn from_matrix(m: Matrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: "square matrix".into(),
                found: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        if m.rows() == 0 {
            return Err(Error::invalid("matrix dimension must be at least 1"));
        }
        let scale = m.frobenius_norm().max(1.0);
        let n = m.rows();
        for i in 0..n {
            for j in 0..=i {
                let d = (m.get(i, j) - m.get(j, i).conj()).norm();
                if d > tol * scale {
                    return Err(Error::invalid(format!(
                        "matrix is not Hermitian: entry ({i}, {j}) differs from conj of ({j}, {i}) by {d:e}"
                    )));
                }
            }
        }
        Ok(Self::hermitian_part(&m))
    }

    /// `(m + m*) / 2`, with the upper triangle mirrored from the lower one.
    pub fn hermitian_part(m: &Matrix) -> Self {
        debug_assert!(m.is_square());
        let n = m.rows();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            out.set(i, i, C64::new(m.get(i, i).re, 0.0));
            for j in 0..i {
                let v = (m.get(i, j) + m.get(j, i).conj()) * 0.5;
                out.set(i, j, v);
                out.set(j, i, v.conj());
            }
        }
        Self(out)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.0.get(i, i).re).sum()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self(self.0.scale(c))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.0.same_shape(&other.0)?;
        Ok(Self(self.0.zip_with(&other.0, |a, b| a + b)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.0.same_shape(&other.0)?;
        Ok(Self(self.0.zip_with(&other.0, |a, b| a - b)))
    }

    /// `X* A X` for a conformable `X` (n x k); Hermitian by construction.
    pub fn congruence(&self, x: &Matrix) -> Result<Self> {
        if x.rows() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.dim()),
                found: format!("{} rows", x.rows()),
            });
        }
        if x.cols() == 0 {
            return Err(Error::invalid("congruence by a matrix with zero columns"));
        }
        let ax = self.0.mul_unchecked(x);
        Ok(Self::hermitian_part(&x.adjoint().mul_unchecked(&ax)))
    }

    /// Frobenius distance to another Hermitian matrix.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.0.distance(&other.0)
    }

    pub fn is_real(&self) -> bool {
        self.0.max_imag() == 0.0
    }
}

impl fmt::Debug for HermitianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.0)
    }
}

impl Add for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn add(self, rhs: Self) -> HermitianMatrix {
        self.try_add(rhs).expect("Hermitian add: dimension mismatch")
    }
}

impl Sub for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn sub(self, rhs: Self) -> HermitianMatrix {
        self.try_sub(rhs).expect("Hermitian sub: dimension mismatch")
    }
}

impl Mul<f64> for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn mul(self, rhs: f64) -> HermitianMatrix {
        self.scale(rhs)
    }
}

impl Neg for &HermitianMatrix {
    type Output = HermitianMatrix;

    fn neg(self) -> HermitianMatrix {
        self.scale(-1.0)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: Self) -> Matrix {
        self.matmul(rhs).expect("matrix product: dimension mismatch")
    }
}
