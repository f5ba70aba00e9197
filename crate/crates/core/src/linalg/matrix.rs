use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{Float, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Entry, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Entry> fmt::Debug for DenseMatrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl<E: Entry> DenseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![E::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = E::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows * cols");
        Self { rows, cols, data }
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

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [E] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [E] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<F: Entry>(&self, f: impl Fn(E) -> F) -> DenseMatrix<F> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_modulus(&self) -> E::Real {
        self.data
            .iter()
            .map(|x| x.modulus())
            .fold(E::Real::zero(), |a, b| a.max(b))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| self.row(i).iter().skip(i + 1).all(|x| x.is_zero()))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, &a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let src = other.row(k);
                for (o, &b) in out.row_mut(i).iter_mut().zip(src) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[E]) -> Vec<E> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(E::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    /// `Aᴴ y`.
    pub fn adjoint_mul_vec(&self, y: &[E]) -> Vec<E> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![E::zero(); self.cols];
        for (i, &yi) in y.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a.conjugate() * yi;
            }
        }
        out
    }

    /// Inverse of a lower-triangular matrix by forward substitution on the
    /// columns of the identity.
    pub fn lower_triangular_inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::InvalidArgument("matrix must be square".into()));
        }
        let n = self.rows;
        for i in 0..n {
            if self[(i, i)].is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "singular triangular matrix: zero pivot at {i}"
                )));
            }
        }
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            inv[(j, j)] = E::one() / self[(j, j)];
            for i in j + 1..n {
                let row = self.row(i);
                let mut s = E::zero();
                for k in j..i {
                    s += row[k] * inv[(k, j)];
                }
                inv[(i, j)] = -s / row[i];
            }
        }
        Ok(inv)
    }
}

impl<T: Scalar> DenseMatrix<Complex<T>> {
    /// True when no entry has an imaginary part.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|c| c.im.is_zero())
    }

    /// Real parts, for matrices where [`Self::is_real`] holds.
    pub fn real_part(&self) -> DenseMatrix<T> {
        self.map(|c| c.re)
    }
}

impl<E> Index<(usize, usize)> for DenseMatrix<E> {
    type Output = E;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> IndexMut<(usize, usize)> for DenseMatrix<E> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}
