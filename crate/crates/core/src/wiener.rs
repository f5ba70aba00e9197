//! Finitely supported elements of the Wiener algebra.
//!
//! A [`WienerElement`] stores the Laurent coefficients `a_n` of
//! `f(z) = Σ a_n z^n` on a contiguous window starting at `offset`. Elements
//! with `offset >= 0` live in the causal subalgebra (power series in `z`).
//! Every value is kept canonically trimmed: the first and last stored
//! coefficients are nonzero unless the element is zero, which is stored as
//! `[0]` at offset 0.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Allowed deviation of `|z|` from 1 in [`WienerElement::evaluate`].
pub const UNIT_CIRCLE_TOL: f64 = 1e-12;

#[derive(Clone, PartialEq)]
pub struct WienerElement<T: Scalar> {
    coeffs: Vec<Complex<T>>,
    offset: i64,
}

impl<T: Scalar> fmt::Debug for WienerElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WienerElement[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i)z^{}", c.re, c.im, self.offset + i as i64)?;
        }
        write!(f, "]")
    }
}

impl<T: Scalar> WienerElement<T> {
    /// Builds an element from coefficients of `z^offset, z^(offset+1), ...`,
    /// trimming zeros at both ends.
    pub fn new(coeffs: Vec<Complex<T>>, offset: i64) -> Self {
        let first = coeffs.iter().position(|c| !c.is_zero());
        let Some(first) = first else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        let coeffs = if first == 0 && last + 1 == coeffs.len() {
            coeffs
        } else {
            coeffs[first..=last].to_vec()
        };
        Self {
            coeffs,
            offset: offset + first as i64,
        }
    }

    /// Causal element `Σ a_n z^n` with real coefficients.
    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(
            coeffs.iter().map(|&a| Complex::new(a, T::zero())).collect(),
            0,
        )
    }

    pub fn zero() -> Self {
        Self {
            coeffs: vec![Complex::zero()],
            offset: 0,
        }
    }

    pub fn one() -> Self {
        Self::constant(Complex::one())
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c], 0)
    }

    /// `c · z^power`.
    pub fn monomial(c: Complex<T>, power: i64) -> Self {
        Self::new(vec![c], power)
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Index of the first stored coefficient.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Index of the last stored coefficient.
    pub fn last_index(&self) -> i64 {
        self.offset + self.coeffs.len() as i64 - 1
    }

    /// Number of stored coefficients (span of the support).
    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_causal(&self) -> bool {
        self.offset >= 0
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im.is_zero())
    }

    /// Coefficient of `z^n` (zero outside the stored window).
    pub fn coeff(&self, n: i64) -> Complex<T> {
        let i = n - self.offset;
        if i < 0 || i >= self.coeffs.len() as i64 {
            Complex::zero()
        } else {
            self.coeffs[i as usize]
        }
    }

    /// Polynomial degree of a causal element.
    pub fn degree(&self) -> Result<usize> {
        self.require_causal()?;
        Ok(self.last_index() as usize)
    }

    /// Dense causal coefficient vector `(a_0, ..., a_deg)` including the
    /// leading zeros implied by a positive offset.
    pub fn causal_coeffs(&self) -> Result<Vec<Complex<T>>> {
        self.require_causal()?;
        let mut out = vec![Complex::zero(); self.offset as usize];
        out.extend_from_slice(&self.coeffs);
        Ok(out)
    }

    pub(crate) fn require_causal(&self) -> Result<()> {
        if self.is_causal() {
            Ok(())
        } else {
            Err(Error::NotCausal {
                offset: self.offset,
            })
        }
    }

    /// `Σ |a_n|`.
    pub fn l1_norm(&self) -> T {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `Σ |n · a_n|`, a bound on `|f'|` over the unit circle.
    pub fn derivative_bound(&self) -> T {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let n = (self.offset + i as i64).unsigned_abs() as usize;
                T::from_len(n) * c.norm()
            })
            .sum()
    }

    /// Laurent convolution `f · g`.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = vec![Complex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out, self.offset + other.offset)
    }

    fn combine(&self, other: &Self, op: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        let lo = self.offset.min(other.offset);
        let hi = self.last_index().max(other.last_index());
        let coeffs = (lo..=hi)
            .map(|n| op(self.coeff(n), other.coeff(n)))
            .collect();
        Self::new(coeffs, lo)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect(), self.offset)
    }

    /// Reflects the polynomial: `a_0 + ... + a_d z^d` becomes
    /// `a_d + ... + a_0 z^d` where `d` is the degree (offset included).
    pub fn reversed(&self) -> Result<Self> {
        let dense = self.causal_coeffs()?;
        Ok(Self::new(dense.into_iter().rev().collect(), 0))
    }

    /// Truncation to the coefficients with index in `lo..=hi`.
    pub fn window(&self, lo: i64, hi: i64) -> Self {
        if hi < lo {
            return Self::zero();
        }
        Self::new((lo..=hi).map(|n| self.coeff(n)).collect(), lo)
    }

    /// `f(z)` for `|z| = 1`.
    pub fn evaluate(&self, z: Complex<T>) -> Result<Complex<T>> {
        let modulus = z.norm();
        if (modulus - T::one()).abs() > T::tol(UNIT_CIRCLE_TOL) {
            return Err(Error::OffUnitCircle {
                modulus: modulus.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self.eval_at(z))
    }

    /// `f(z)` without the unit-circle check; `z` must be nonzero whenever the
    /// element has negative powers.
    pub fn eval_at(&self, z: Complex<T>) -> Complex<T> {
        // Horner on the nonnegative powers in z and on the negative powers
        // in 1/z.
        let mut pos = Complex::<T>::zero();
        let mut neg = Complex::<T>::zero();
        let last = self.last_index();
        if last >= 0 {
            for n in (self.offset.max(0)..=last).rev() {
                pos = pos * z + self.coeff(n);
            }
            if self.offset > 0 {
                pos *= z.powi(self.offset as i32);
            }
        }
        if self.offset < 0 {
            let zinv = z.inv();
            let hi = last.min(-1);
            for n in self.offset..=hi {
                neg = (neg + self.coeff(n)) * zinv;
            }
            if hi < -1 {
                neg *= zinv.powi((-1 - hi) as i32);
            }
        }
        pos + neg
    }

    /// Values of `f` at the `grid_size`-th roots of unity.
    pub fn circle_values(&self, grid_size: usize) -> Vec<Complex<T>> {
        let step = T::TAU() / T::from_len(grid_size);
        (0..grid_size)
            .map(|k| self.eval_at(Complex::from_polar(T::one(), step * T::from_len(k))))
            .collect()
    }

    /// Grid maximum of `|f|` over the `grid_size`-th roots of unity.
    ///
    /// This is a lower bound on `‖f‖∞`; see [`Self::sup_norm_bounds`] for the
    /// matching upper bound. `grid_size` must be a power of two, at least 16,
    /// so that refined grids contain the coarser ones.
    pub fn sup_norm(&self, grid_size: usize) -> Result<T> {
        if grid_size < 16 || !grid_size.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "grid size must be a power of two >= 16, got {grid_size}"
            )));
        }
        Ok(self
            .circle_values(grid_size)
            .into_iter()
            .map(|v| v.norm())
            .fold(T::zero(), T::max))
    }

    /// `(lower, upper)` bracket on `‖f‖∞`: the grid maximum and the grid
    /// maximum plus `π/G · Σ|n a_n|`.
    pub fn sup_norm_bounds(&self, grid_size: usize) -> Result<(T, T)> {
        let lower = self.sup_norm(grid_size)?;
        let slack = T::PI() / T::from_len(grid_size) * self.derivative_bound();
        Ok((lower, lower + slack))
    }

    /// Coefficients `g_0 .. g_{len-1}` of the formal power series `1/f`.
    ///
    /// Defined for causal `f` with `a_0 != 0` regardless of root location; for
    /// non-invertible `f` the coefficients grow without bound.
    pub fn series_inverse(&self, len: usize) -> Result<Vec<Complex<T>>> {
        Ok(SeriesInverse::new(self)?.take(len).collect())
    }

    pub fn to_coeff_file(&self) -> CoeffFile {
        CoeffFile {
            offset: self.offset,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| [c.re.to_f64().unwrap(), c.im.to_f64().unwrap()])
                .collect(),
        }
    }

    pub fn from_coeff_file(file: &CoeffFile) -> Result<Self> {
        if file.coeffs.is_empty() {
            return Err(Error::Parse("field `coeffs`: must be nonempty".into()));
        }
        let mut coeffs = Vec::with_capacity(file.coeffs.len());
        for (i, [re, im]) in file.coeffs.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Parse(format!("field `coeffs[{i}]`: non-finite value")));
            }
            coeffs.push(Complex::new(
                T::from_f64(*re).unwrap(),
                T::from_f64(*im).unwrap(),
            ));
        }
        Ok(Self::new(coeffs, file.offset))
    }

    /// Parses the JSON coefficient format `{"offset": n, "coeffs": [[re, im], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CoeffFile = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {}, column {}: {}", e.line(), e.column(), e))
        })?;
        Self::from_coeff_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_coeff_file()).expect("coefficient file serializes")
    }
}

/// On-disk coefficient format. Unknown fields are ignored on load, so files
/// written with extra metadata can be read back as plain elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffFile {
    pub offset: i64,
    pub coeffs: Vec<[f64; 2]>,
}

/// Streaming coefficients of the formal reciprocal of a causal element:
/// `g_0 = 1/a_0`, `g_n = -(1/a_0) Σ_{k=1..n} a_k g_{n-k}`.
#[derive(Debug, Clone)]
pub struct SeriesInverse<T: Scalar> {
    a: Vec<Complex<T>>,
    inv_a0: Complex<T>,
    g: Vec<Complex<T>>,
}

impl<T: Scalar> SeriesInverse<T> {
    pub fn new(f: &WienerElement<T>) -> Result<Self> {
        f.require_causal()?;
        if f.offset != 0 || f.is_zero() {
            return Err(Error::InvalidArgument(
                "formal inverse needs a nonzero constant coefficient".into(),
            ));
        }
        let a = f.coeffs.clone();
        Ok(Self {
            inv_a0: a[0].inv(),
            a,
            g: Vec::new(),
        })
    }

    /// Coefficients produced so far.
    pub fn computed(&self) -> &[Complex<T>] {
        &self.g
    }

    /// Coefficients of `f · (g_0 + ... + g_{L-1} z^{L-1}) − 1`, which live at
    /// indices `L .. L + deg(f) − 1`, where `L` is the number computed so far.
    pub fn residual(&self) -> Vec<Complex<T>> {
        let len = self.g.len();
        let deg = self.a.len() - 1;
        (len..len + deg)
            .map(|m| {
                let mut s = Complex::zero();
                for (k, &ak) in self.a.iter().enumerate() {
                    if k <= m && m - k < len {
                        s += ak * self.g[m - k];
                    }
                }
                s
            })
            .collect()
    }
}

impl<T: Scalar> Iterator for SeriesInverse<T> {
    type Item = Complex<T>;

    fn next(&mut self) -> Option<Complex<T>> {
        let n = self.g.len();
        let next = if n == 0 {
            self.inv_a0
        } else {
            let mut acc = Complex::<T>::zero();
            for k in 1..self.a.len().min(n + 1) {
                acc += self.a[k] * self.g[n - k];
            }
            -acc * self.inv_a0
        };
        self.g.push(next);
        Some(next)
    }
}

impl<T: Scalar> Mul for &WienerElement<T> {
    type Output = WienerElement<T>;
    fn mul(self, rhs: Self) -> WienerElement<T> {
        self.multiply(rhs)
    }
}

impl<T: Scalar> Add for &WienerElement<T> {
    type Output = WienerElement<T>;
    fn add(self, rhs: Self) -> WienerElement<T> {
        self.combine(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &WienerElement<T> {
    type Output = WienerElement<T>;
    fn sub(self, rhs: Self) -> WienerElement<T> {
        self.combine(rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Neg for &WienerElement<T> {
    type Output = WienerElement<T>;
    fn neg(self) -> WienerElement<T> {
        WienerElement::new(self.coeffs.iter().map(|&c| -c).collect(), self.offset)
    }
}
