//! Dense square complex matrices.
//!
//! Matrices are immutable values stored row-major; every operation returns a
//! fresh matrix. The scalar type is [`Complex`] (`num_complex::Complex64`).

use std::fmt;
use std::ops::Index;

pub use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};

/// Default ceiling on matrix dimension (2^10).
pub const DEFAULT_MAX_DIM: usize = 1 << 10;

/// Counts scalar complex multiplications performed by an instrumented kernel.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct MulCounter {
    count: u64,
}

impl MulCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    #[inline]
    pub fn add(&mut self, n: u64) {
        self.count += n;
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex>,
}

impl Matrix {
    /// Builds a matrix from row-major entries. Rejects empty, non-square and
    /// non-finite input.
    pub fn from_vec(dim: usize, data: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite entry".into()));
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        Self::from_vec(dim, rows.concat())
    }

    /// Real-valued convenience constructor.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(dim, data.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(entries: &[Complex]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m.data[i * entries.len() + i] = z;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.data[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex]> {
        self.data.chunks(self.dim)
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<Complex>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn scale(&self, s: Complex) -> Matrix {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix) -> Result<f64> {
        check_same_dim(self, other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex;

    fn index(&self, (row, col): (usize, usize)) -> &Complex {
        &self.data[row * self.dim + col]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.dim, self.dim)?;
        for row in self.rows() {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:>9.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

fn check_same_dim(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    Ok(())
}

/// Schoolbook product `a × b`, counting `dim³` scalar multiplications.
pub fn mat_mul_naive(a: &Matrix, b: &Matrix, counter: &mut MulCounter) -> Result<Matrix> {
    check_same_dim(a, b)?;
    let n = a.dim;
    let mut out = vec![Complex::new(0.0, 0.0); n * n];
    for i in 0..n {
        for l in 0..n {
            let a_il = a.data[i * n + l];
            let b_row = &b.data[l * n..(l + 1) * n];
            let out_row = &mut out[i * n..(i + 1) * n];
            for (o, &b_lj) in out_row.iter_mut().zip(b_row) {
                *o += a_il * b_lj;
            }
        }
    }
    counter.add((n as u64).pow(3));
    Ok(Matrix::from_raw(n, out))
}

/// Uninstrumented product.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    mat_mul_naive(a, b, &mut MulCounter::new())
}

pub fn kron(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    kron_with_limit(a, b, DEFAULT_MAX_DIM)
}

pub fn kron_with_limit(a: &Matrix, b: &Matrix, max_dim: usize) -> Result<Matrix> {
    let dim = a
        .dim
        .checked_mul(b.dim)
        .filter(|&d| d <= max_dim)
        .ok_or(Error::DimensionOverflow {
            dim: a.dim.saturating_mul(b.dim),
            max: max_dim,
        })?;
    let (na, nb) = (a.dim, b.dim);
    let mut out = vec![Complex::new(0.0, 0.0); dim * dim];
    for i in 0..na {
        for j in 0..na {
            let s = a.data[i * na + j];
            for p in 0..nb {
                for q in 0..nb {
                    out[(i * nb + p) * dim + j * nb + q] = s * b.data[p * nb + q];
                }
            }
        }
    }
    Ok(Matrix::from_raw(dim, out))
}

/// Conjugate transpose.
pub fn adjoint(a: &Matrix) -> Matrix {
    let n = a.dim;
    let mut out = vec![Complex::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a.data[i * n + j].conj();
        }
    }
    Matrix::from_raw(n, out)
}

pub fn trace(a: &Matrix) -> Complex {
    (0..a.dim).map(|i| a.data[i * a.dim + i]).sum()
}

/// `tr(a† b)` without forming the product.
pub fn trace_adjoint_product(a: &Matrix, b: &Matrix) -> Result<Complex> {
    check_same_dim(a, b)?;
    Ok(a.data.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum())
}

/// Max entrywise deviation of `a†a` from the identity.
pub fn unitarity_deviation(a: &Matrix) -> f64 {
    let n = a.dim;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mut s = Complex::new(0.0, 0.0);
            for l in 0..n {
                s += a.data[l * n + i].conj() * a.data[l * n + j];
            }
            if i == j {
                s -= 1.0;
            }
            worst = worst.max(s.norm());
        }
    }
    worst
}

pub fn is_unitary(a: &Matrix, tol: f64) -> bool {
    unitarity_deviation(a) <= tol
}
