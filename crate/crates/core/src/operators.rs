//! Finite compressions of `f(T)` and `f(B)`.
//!
//! The unilateral shift acts on `H²` as multiplication by `z`, so its `N×N`
//! compression is the subdiagonal shift `S` (`S e_n = e_{n+1}`) and `f(T)`
//! compresses to the lower-triangular Toeplitz matrix `Σ a_n S^n`. The
//! bilateral shift is modelled by the cyclic shift `C`, which makes `f(B)` a
//! circulant diagonalized by the discrete Fourier basis.

use std::fmt;
use std::io::{self, Write};

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{largest_singular_value, DenseMatrix};
use crate::scalar::Scalar;
use crate::wiener::WienerElement;

/// Grid size used for `‖f‖∞` in [`isometry_sweep`].
pub const DEFAULT_SUP_GRID: usize = 1 << 16;

/// Szegő points must satisfy `|w| <= 1 - SZEGO_MARGIN`.
pub const SZEGO_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// Compression of `f(T)`: lower-triangular Toeplitz.
    UnilateralCompression,
    /// Finite model of `f(B)`: circulant.
    BilateralCirculant,
}

impl OperatorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OperatorKind::UnilateralCompression => "unilateral",
            OperatorKind::BilateralCirculant => "bilateral",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for OperatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unilateral" => Ok(Self::UnilateralCompression),
            "bilateral" => Ok(Self::BilateralCirculant),
            other => Err(Error::Parse(format!("unknown operator kind `{other}`"))),
        }
    }
}

/// A dense `N×N` compression of a transfer-function operator.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator<T: Scalar> {
    pub matrix: DenseMatrix<Complex<T>>,
    pub kind: OperatorKind,
    pub source: WienerElement<T>,
    pub dim: usize,
}

impl<T: Scalar> TruncatedOperator<T> {
    /// Eigenvalues of a circulant: the symbol at the `N`-th roots of unity,
    /// `f(ω^k)` for `k = 0..N`. `None` for unilateral compressions.
    pub fn circulant_spectrum(&self) -> Option<Vec<Complex<T>>> {
        match self.kind {
            OperatorKind::BilateralCirculant => Some(self.source.circle_values(self.dim)),
            OperatorKind::UnilateralCompression => None,
        }
    }

    /// Writes the dense text dump: a header line `N kind`, then `N` rows of
    /// `N` space-separated `re,im` pairs.
    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{} {}", self.dim, self.kind)?;
        for i in 0..self.dim {
            let row: Vec<String> = self
                .matrix
                .row(i)
                .iter()
                .map(|c| format!("{:.16e},{:.16e}", c.re, c.im))
                .collect();
            writeln!(out, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Parses a dump written by [`TruncatedOperator::write_dump`].
pub fn parse_dump<T: Scalar>(text: &str) -> Result<(OperatorKind, DenseMatrix<Complex<T>>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty dump".into()))?;
    let mut parts = header.split_whitespace();
    let n: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse("line 1: expected dimension".into()))?;
    let kind: OperatorKind = parts
        .next()
        .ok_or_else(|| Error::Parse("line 1: expected kind".into()))?
        .parse()?;
    let mut data = Vec::with_capacity(n * n);
    for r in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("line {}: missing row", r + 2)))?;
        let before = data.len();
        for (c, pair) in line.split_whitespace().enumerate() {
            let parsed = pair.split_once(',').and_then(|(re, im)| {
                Some(Complex::new(
                    T::from_f64(re.parse::<f64>().ok()?)?,
                    T::from_f64(im.parse::<f64>().ok()?)?,
                ))
            });
            data.push(parsed.ok_or_else(|| {
                Error::Parse(format!("line {}, entry {}: expected re,im", r + 2, c + 1))
            })?);
        }
        if data.len() - before != n {
            return Err(Error::Parse(format!("line {}: expected {n} entries", r + 2)));
        }
    }
    Ok((kind, DenseMatrix::from_rows(n, n, data)))
}

fn require_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::InvalidArgument("dimension must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `Σ a_n S^n` for the `dim×dim` subdiagonal shift `S`, accumulated power by
/// power.
pub fn build_unilateral<T: Scalar>(f: &WienerElement<T>, dim: usize) -> Result<TruncatedOperator<T>> {
    f.require_causal()?;
    require_dim(dim)?;
    let mut acc = DenseMatrix::zeros(dim, dim);
    let mut power = DenseMatrix::identity(dim);
    for n in 0..=f.last_index() {
        if n as usize >= dim {
            // S^n = 0 from here on
            break;
        }
        let a = f.coeff(n);
        if !a.is_zero() {
            for (x, &p) in acc.as_mut_slice().iter_mut().zip(power.as_slice()) {
                *x += a * p;
            }
        }
        power = shift_down(&power);
    }
    Ok(TruncatedOperator {
        matrix: acc,
        kind: OperatorKind::UnilateralCompression,
        source: f.clone(),
        dim,
    })
}

/// `S · P`: every row moves down by one and the first row becomes zero.
fn shift_down<T: Scalar>(p: &DenseMatrix<Complex<T>>) -> DenseMatrix<Complex<T>> {
    let n = p.rows();
    let mut out = DenseMatrix::zeros(n, p.cols());
    for i in 1..n {
        out.row_mut(i).copy_from_slice(p.row(i - 1));
    }
    out
}

/// `T_f` from the definition: column `j` holds the coefficients of
/// `P(f(z) z^j)` in degrees `0..dim`.
pub fn build_toeplitz<T: Scalar>(f: &WienerElement<T>, dim: usize) -> Result<TruncatedOperator<T>> {
    f.require_causal()?;
    require_dim(dim)?;
    let mut m = DenseMatrix::zeros(dim, dim);
    for j in 0..dim {
        let column = f.multiply(&WienerElement::monomial(Complex::one(), j as i64));
        for i in 0..dim {
            m[(i, j)] = column.coeff(i as i64);
        }
    }
    Ok(TruncatedOperator {
        matrix: m,
        kind: OperatorKind::UnilateralCompression,
        source: f.clone(),
        dim,
    })
}

/// Circulant `Σ a_n C^n` for the cyclic shift `C e_i = e_{(i+1) mod N}`.
///
/// Rejects `dim` smaller than the support span, where distinct coefficients
/// would land on the same diagonal.
pub fn build_bilateral<T: Scalar>(f: &WienerElement<T>, dim: usize) -> Result<TruncatedOperator<T>> {
    require_dim(dim)?;
    if dim < f.support_len() {
        return Err(Error::DimensionTooSmall {
            dim,
            support: f.support_len(),
        });
    }
    let mut m = DenseMatrix::zeros(dim, dim);
    for n in f.offset()..=f.last_index() {
        let a = f.coeff(n);
        if a.is_zero() {
            continue;
        }
        let k = n.rem_euclid(dim as i64) as usize;
        for j in 0..dim {
            m[((j + k) % dim, j)] += a;
        }
    }
    Ok(TruncatedOperator {
        matrix: m,
        kind: OperatorKind::BilateralCirculant,
        source: f.clone(),
        dim,
    })
}

/// Largest singular value of the operator matrix.
pub fn operator_norm<T: Scalar>(op: &TruncatedOperator<T>) -> T {
    matrix_norm(&op.matrix)
}

/// Spectral norm of a dense complex matrix, in real arithmetic when every
/// entry is real.
pub fn matrix_norm<T: Scalar>(m: &DenseMatrix<Complex<T>>) -> T {
    if m.is_real() {
        largest_singular_value(&m.real_part())
    } else {
        largest_singular_value(m)
    }
}

/// Truncated Szegő kernel `k_w = (1, w̄, w̄², ...)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SzegoVector<T: Scalar> {
    point: Complex<T>,
    values: Vec<Complex<T>>,
}

impl<T: Scalar> SzegoVector<T> {
    pub fn new(point: Complex<T>, len: usize) -> Result<Self> {
        require_dim(len)?;
        if point.norm() > T::one() - T::lit(SZEGO_MARGIN) {
            return Err(Error::InvalidArgument(format!(
                "Szegő point must satisfy |w| <= 1 - {SZEGO_MARGIN}"
            )));
        }
        let wbar = point.conj();
        let mut values = Vec::with_capacity(len);
        let mut v = Complex::one();
        for _ in 0..len {
            values.push(v);
            v *= wbar;
        }
        Ok(Self { point, values })
    }

    pub fn point(&self) -> Complex<T> {
        self.point
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `⟨A k_w, k_w⟩ / ⟨k_w, k_w⟩` for `A = build_unilateral(f, len(k_w))`.
///
/// Tends to `f(w)` as the truncation grows; its modulus never exceeds the
/// operator norm of `A`.
pub fn rayleigh_quotient<T: Scalar>(f: &WienerElement<T>, w: &SzegoVector<T>) -> Result<Complex<T>> {
    let a = build_unilateral(f, w.len())?;
    let ak = a.matrix.mul_vec(w.values());
    let num: Complex<T> = ak
        .iter()
        .zip(w.values())
        .map(|(&x, &k)| x * k.conj())
        .fold(Complex::zero(), |s, t| s + t);
    let den: T = w.values().iter().map(|k| k.norm_sqr()).sum();
    Ok(num / den)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryRow<T> {
    pub dim: usize,
    /// `‖f(T_N)‖`.
    pub norm: T,
    /// `‖f‖∞ − ‖f(T_N)‖` with `‖f‖∞` taken on the sup-norm grid.
    pub gap: T,
}

/// Convergence table of `‖f(T_N)‖` toward `‖f‖∞` over increasing `dims`.
pub fn isometry_sweep<T: Scalar>(f: &WienerElement<T>, dims: &[usize]) -> Result<Vec<IsometryRow<T>>> {
    isometry_sweep_with_grid(f, dims, DEFAULT_SUP_GRID)
}

pub fn isometry_sweep_with_grid<T: Scalar>(
    f: &WienerElement<T>,
    dims: &[usize],
    grid_size: usize,
) -> Result<Vec<IsometryRow<T>>> {
    f.require_causal()?;
    if dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("dims must be strictly increasing".into()));
    }
    let sup = f.sup_norm(grid_size)?;
    dims.par_iter()
        .map(|&dim| {
            let norm = operator_norm(&build_unilateral(f, dim)?);
            Ok(IsometryRow {
                dim,
                norm,
                gap: sup - norm,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(c: &[f64]) -> WienerElement<f64> {
        WienerElement::from_real(c)
    }

    fn assert_real_matrix(m: &DenseMatrix<Complex<f64>>, expected: &[&[f64]]) {
        assert_eq!(m.rows(), expected.len());
        for (i, row) in expected.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(m[(i, j)], Complex::new(v, 0.0), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn unilateral_examples() {
        let a = build_unilateral(&real(&[1.0, -2.0]), 3).unwrap();
        assert_real_matrix(&a.matrix, &[&[1.0, 0.0, 0.0], &[-2.0, 1.0, 0.0], &[0.0, -2.0, 1.0]]);
        assert_eq!(build_unilateral(&real(&[1.0]), 5).unwrap().matrix, DenseMatrix::identity(5));
        let z2 = WienerElement::<f64>::monomial(Complex::one(), 2);
        assert_eq!(build_unilateral(&z2, 2).unwrap().matrix, DenseMatrix::zeros(2, 2));
    }

    #[test]
    fn unilateral_rejects_laurent_and_zero_dim() {
        let f = WienerElement::monomial(Complex::new(1.0, 0.0), -1);
        assert!(matches!(build_unilateral(&f, 3), Err(Error::NotCausal { offset: -1 })));
        assert!(build_toeplitz(&f, 3).is_err());
        assert!(build_unilateral(&real(&[1.0]), 0).is_err());
    }

    #[test]
    fn toeplitz_examples() {
        let f = real(&[1.0, -2.0]);
        let t = build_toeplitz(&f, 3).unwrap();
        assert_eq!(t.matrix, build_unilateral(&f, 3).unwrap().matrix);
        let a0 = Complex::new(0.3, -1.2);
        let k = build_toeplitz(&WienerElement::constant(a0), 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(k.matrix[(i, j)], if i == j { a0 } else { Complex::zero() });
            }
        }
        let z = build_toeplitz(&WienerElement::monomial(Complex::new(1.0, 0.0), 1), 4).unwrap();
        assert_real_matrix(
            &z.matrix,
            &[
                &[0.0, 0.0, 0.0, 0.0],
                &[1.0, 0.0, 0.0, 0.0],
                &[0.0, 1.0, 0.0, 0.0],
                &[0.0, 0.0, 1.0, 0.0],
            ],
        );
    }

    #[test]
    fn bilateral_examples() {
        let f = real(&[1.0, -2.0]);
        let b = build_bilateral(&f, 2).unwrap();
        assert_real_matrix(&b.matrix, &[&[1.0, -2.0], &[-2.0, 1.0]]);
        for n in [1usize, 3, 6] {
            let zn = WienerElement::monomial(Complex::new(1.0, 0.0), n as i64);
            assert_eq!(build_bilateral(&zn, n).unwrap().matrix, DenseMatrix::identity(n));
        }
        assert!(matches!(
            build_bilateral(&real(&[1.0, 0.0, 3.0]), 2),
            Err(Error::DimensionTooSmall { dim: 2, support: 3 })
        ));
    }

    #[test]
    fn bilateral_is_circulant_for_laurent_symbols() {
        let f = WienerElement::new(
            vec![Complex::new(0.5, 0.0), Complex::new(1.0, 1.0), Complex::new(-2.0, 0.0)],
            -1,
        );
        let b = build_bilateral(&f, 5).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let d = (i as i64 - j as i64).rem_euclid(5);
                assert_eq!(b.matrix[(i, j)], b.matrix[(d as usize, 0)]);
            }
        }
        assert_eq!(b.matrix[(4, 0)], Complex::new(0.5, 0.0));
    }

    #[test]
    fn circulant_spectrum_example() {
        let b = build_bilateral(&real(&[1.0, -2.0]), 4).unwrap();
        let spectrum = b.circulant_spectrum().unwrap();
        let expected = [
            Complex::new(-1.0, 0.0),
            Complex::new(1.0, -2.0),
            Complex::new(3.0, 0.0),
            Complex::new(1.0, 2.0),
        ];
        for (s, e) in spectrum.iter().zip(expected) {
            assert!((s - e).norm() < 1e-14);
        }
    }

    #[test]
    fn operator_norm_examples() {
        let id = build_unilateral(&real(&[1.0]), 7).unwrap();
        assert!((operator_norm(&id) - 1.0).abs() < 1e-14);
        let one = build_unilateral(&real(&[1.0, -2.0]), 1).unwrap();
        assert!((operator_norm(&one) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn szego_vector_checks() {
        let w = SzegoVector::new(Complex::new(0.0, 0.5), 4).unwrap();
        assert_eq!(w.values()[0], Complex::one());
        assert!((w.values()[2] - Complex::new(-0.25, 0.0)).norm() < 1e-15);
        assert!(SzegoVector::new(Complex::new(1.0 - 1e-7, 0.0), 4).is_err());
        assert!(SzegoVector::new(Complex::new(1.0 - 1e-6, 0.0), 4).is_ok());
    }

    #[test]
    fn rayleigh_examples() {
        for w in [Complex::new(0.3, 0.4), Complex::new(-0.9, 0.0)] {
            let k = SzegoVector::new(w, 17).unwrap();
            let q = rayleigh_quotient(&real(&[1.0]), &k).unwrap();
            assert!((q - Complex::one()).norm() < 1e-14);
        }
        for n in [1, 2, 9] {
            let k = SzegoVector::new(Complex::zero(), n).unwrap();
            let q = rayleigh_quotient(&real(&[1.0, -2.0]), &k).unwrap();
            assert_eq!(q, Complex::one());
        }
    }

    #[test]
    fn sweep_rejects_unsorted_dims() {
        assert!(isometry_sweep(&real(&[1.0]), &[4, 4]).is_err());
        assert!(isometry_sweep(&real(&[1.0]), &[8, 4]).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let op = build_bilateral(
            &WienerElement::new(vec![Complex::new(0.1, -0.2), Complex::new(3.0, 0.0)], 0),
            3,
        )
        .unwrap();
        let mut buf = Vec::new();
        op.write_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("3 bilateral\n"));
        let (kind, m) = parse_dump::<f64>(&text).unwrap();
        assert_eq!(kind, OperatorKind::BilateralCirculant);
        assert_eq!(m, op.matrix);
        assert!(parse_dump::<f64>("2 unilateral\n1,0 0,0\n").is_err());
    }
}
