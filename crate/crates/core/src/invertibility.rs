//! Algebraic invertibility of transfer functions.
//!
//! A causal polynomial `f` is invertible in the causal algebra exactly when
//! every root lies strictly outside the unit circle; its reciprocal is then
//! the power series computed by [`invert_causal`]. When every root lies
//! strictly inside, `1/f` still exists as a Laurent series in negative powers
//! ([`invert_anticausal`]), which is how `f(B)` can be inverted while `f(T)`
//! cannot. [`asymmetry_report`] measures that difference on finite
//! compressions.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::polynomial_roots;
use crate::operators::{build_bilateral, build_unilateral, matrix_norm};
use crate::scalar::Scalar;
use crate::wiener::{SeriesInverse, WienerElement};

/// Root tolerance used when no explicit one is given.
pub const DEFAULT_ROOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Every root strictly outside the unit circle.
    Invertible,
    /// At least one root within `tol` of the unit circle.
    Borderline,
    /// A root strictly inside and none on the circle.
    NonInvertible,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Invertible => "Invertible",
            Verdict::Borderline => "Borderline",
            Verdict::NonInvertible => "NonInvertible",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootClassification<T: Scalar> {
    pub roots: Vec<Complex<T>>,
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
    pub tol: T,
}

impl<T: Scalar> RootClassification<T> {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn verdict(&self) -> Verdict {
        if self.on_circle > 0 {
            Verdict::Borderline
        } else if self.inside > 0 {
            Verdict::NonInvertible
        } else {
            Verdict::Invertible
        }
    }

    /// Smallest root modulus, `None` for constants.
    pub fn min_root_modulus(&self) -> Option<T> {
        self.roots.iter().map(|r| r.norm()).reduce(T::min)
    }

    fn not_invertible(&self) -> Error {
        Error::NotInvertible {
            verdict: self.verdict(),
            inside: self.inside,
            on_circle: self.on_circle,
            outside: self.outside,
        }
    }
}

/// Roots of a causal polynomial (companion-matrix eigenvalues) split by
/// position relative to the unit circle.
///
/// A positive offset contributes that many roots at the origin.
pub fn classify_roots<T: Scalar>(f: &WienerElement<T>, tol: T) -> Result<RootClassification<T>> {
    f.require_causal()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !(tol >= T::lit(1e-12) && tol <= T::lit(1e-4)) {
        return Err(Error::InvalidArgument(format!(
            "root tolerance must lie in [1e-12, 1e-4], got {tol:e}"
        )));
    }
    let mut roots = vec![Complex::zero(); f.offset() as usize];
    roots.extend(polynomial_roots(f.coeffs())?);
    let one = T::one();
    let (mut inside, mut on_circle, mut outside) = (0, 0, 0);
    for r in &roots {
        let m = r.norm();
        if (m - one).abs() <= tol {
            on_circle += 1;
        } else if m < one {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    Ok(RootClassification {
        roots,
        inside,
        on_circle,
        outside,
        tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InversionSide {
    /// Power series in `z`.
    Causal,
    /// Laurent series in `z^{-1}`.
    Anticausal,
}

impl InversionSide {
    pub fn as_str(self) -> &'static str {
        match self {
            InversionSide::Causal => "causal",
            InversionSide::Anticausal => "anticausal",
        }
    }
}

/// A truncated reciprocal `1/f` with a certified bound on what was dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionResult<T: Scalar> {
    pub inverse: WienerElement<T>,
    pub side: InversionSide,
    /// Number of series coefficients kept.
    pub truncation_len: usize,
    /// Upper bound on both the ℓ¹ mass of the dropped coefficients and the ℓ¹
    /// norm of `f · inverse − 1`.
    pub tail_bound: T,
}

/// Runs the reciprocal recursion until the a-posteriori bound certifies the
/// tail. Writing `f · g_L = 1 + z^L h`, the dropped part is
/// `−z^L h / f`, so its ℓ¹ mass is at most `‖h‖ (‖g_L‖ + tail)`, which gives
/// `tail ≤ ‖h‖ ‖g_L‖ / (1 − ‖h‖)` once `‖h‖ < 1`.
fn certified_series_inverse<T: Scalar>(
    f: &WienerElement<T>,
    max_len: usize,
    eps: T,
) -> Result<(Vec<Complex<T>>, T)> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    let mut series = SeriesInverse::new(f)?;
    let mut g_norm = T::zero();
    let mut best = T::infinity();
    for _ in 0..max_len {
        g_norm += series.next().expect("series is infinite").norm();
        let h_norm: T = series.residual().iter().map(|c| c.norm()).sum();
        let tail = if h_norm < T::one() {
            h_norm * g_norm / (T::one() - h_norm)
        } else {
            T::infinity()
        };
        let bound = tail.max(h_norm);
        best = best.min(bound);
        if bound <= eps {
            return Ok((series.computed().to_vec(), bound));
        }
    }
    Err(Error::TailNotCertified {
        max_len,
        achieved: best.to_f64().unwrap_or(f64::INFINITY),
        requested: eps.to_f64().unwrap_or(f64::NAN),
    })
}

fn check_eps<T: Scalar>(eps: T) -> Result<()> {
    if eps > T::zero() && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("eps must be positive, got {eps:e}")))
    }
}

/// Reciprocal of `f` in the causal algebra, truncated at the first length
/// whose tail bound is at most `eps`.
pub fn invert_causal<T: Scalar>(f: &WienerElement<T>, max_len: usize, eps: T) -> Result<InversionResult<T>> {
    check_eps(eps)?;
    let class = classify_roots(f, T::lit(DEFAULT_ROOT_TOL))?;
    if class.verdict() != Verdict::Invertible {
        return Err(class.not_invertible());
    }
    let (g, tail_bound) = certified_series_inverse(f, max_len, eps)?;
    let truncation_len = g.len();
    Ok(InversionResult {
        inverse: WienerElement::new(g, 0),
        side: InversionSide::Causal,
        truncation_len,
        tail_bound,
    })
}

/// Laurent reciprocal of `f` supported on negative powers, for `f` with every
/// root strictly inside the unit circle.
///
/// With `f = z^m p(z)` and `d = deg p`, `1/f = z^{-(m+d)} / r(z^{-1})` where
/// `r` is the reversed polynomial of `p`, whose roots lie outside the circle.
pub fn invert_anticausal<T: Scalar>(
    f: &WienerElement<T>,
    max_len: usize,
    eps: T,
) -> Result<InversionResult<T>> {
    check_eps(eps)?;
    let class = classify_roots(f, T::lit(DEFAULT_ROOT_TOL))?;
    if class.degree() == 0 || class.inside != class.degree() {
        return Err(Error::NotAnticausallyInvertible {
            inside: class.inside,
            on_circle: class.on_circle,
            outside: class.outside,
        });
    }
    let m = f.offset();
    let p = WienerElement::new(f.coeffs().to_vec(), 0);
    let d = (p.support_len() - 1) as i64;
    let reversed = p.reversed()?;
    let (g, tail_bound) = certified_series_inverse(&reversed, max_len, eps)?;
    let len = g.len();
    let offset = -(m + d) - (len as i64 - 1);
    Ok(InversionResult {
        inverse: WienerElement::new(g.into_iter().rev().collect(), offset),
        side: InversionSide::Anticausal,
        truncation_len: len,
        tail_bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymmetryRow<T> {
    pub dim: usize,
    /// `‖f(B_N)^{-1}‖ = 1 / min_k |f(ω^k)|`; `None` when the circulant is singular.
    pub norm_circulant_inverse: Option<T>,
    /// `‖f(T_N)^{-1}‖`; `None` when `a_0 = 0`.
    pub norm_triangular_inverse: Option<T>,
    pub cond_circulant: Option<T>,
    pub cond_triangular: Option<T>,
}

/// Inverse norms and condition numbers of the circulant and triangular
/// compressions of `f` for each dimension.
pub fn asymmetry_report<T: Scalar>(f: &WienerElement<T>, dims: &[usize]) -> Result<Vec<AsymmetryRow<T>>> {
    f.require_causal()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    dims.par_iter()
        .map(|&dim| {
            let circ = build_bilateral(f, dim)?;
            let spectrum = circ.circulant_spectrum().expect("circulant has a spectrum");
            let (lo, hi) = spectrum
                .iter()
                .map(|v| v.norm())
                .fold((T::infinity(), T::zero()), |(lo, hi), m| (lo.min(m), hi.max(m)));
            let singular = lo <= T::epsilon() * hi * T::from_len(dim);
            let (norm_circulant_inverse, cond_circulant) = if singular {
                (None, None)
            } else {
                (Some(T::one() / lo), Some(hi / lo))
            };

            let tri = build_unilateral(f, dim)?;
            let (norm_triangular_inverse, cond_triangular) =
                match tri.matrix.lower_triangular_inverse() {
                    Ok(inv) => {
                        let ninv = matrix_norm(&inv);
                        (Some(ninv), Some(matrix_norm(&tri.matrix) * ninv))
                    }
                    Err(_) => (None, None),
                };
            Ok(AsymmetryRow {
                dim,
                norm_circulant_inverse,
                norm_triangular_inverse,
                cond_circulant,
                cond_triangular,
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

    #[test]
    fn classify_examples() {
        let c = classify_roots(&real(&[1.0, -2.0]), 1e-9).unwrap();
        assert_eq!((c.inside, c.on_circle, c.outside), (1, 0, 0));
        assert!((c.roots[0] - 0.5).norm() < 1e-15);
        assert_eq!(c.verdict(), Verdict::NonInvertible);

        let c = classify_roots(&real(&[1.0, -0.5]), 1e-9).unwrap();
        assert!((c.roots[0] - 2.0).norm() < 1e-14);
        assert_eq!(c.verdict(), Verdict::Invertible);

        let c = classify_roots(&real(&[1.0, -1.0]), 1e-9).unwrap();
        assert_eq!(c.verdict(), Verdict::Borderline);

        let c = classify_roots(&real(&[3.0]), 1e-9).unwrap();
        assert_eq!(c.degree(), 0);
        assert_eq!(c.verdict(), Verdict::Invertible);
    }

    #[test]
    fn classify_counts_roots_at_origin() {
        let f = WienerElement::new(vec![Complex::new(1.0, 0.0), Complex::new(-0.25, 0.0)], 2);
        let c = classify_roots(&f, 1e-9).unwrap();
        assert_eq!(c.degree(), 3);
        assert_eq!((c.inside, c.outside), (2, 1));
    }

    #[test]
    fn classify_errors() {
        assert_eq!(
            classify_roots(&WienerElement::<f64>::zero(), 1e-9),
            Err(Error::ZeroPolynomial)
        );
        assert!(classify_roots(&real(&[1.0, 2.0]), 1e-3).is_err());
        assert!(classify_roots(&real(&[1.0, 2.0]), 1e-13).is_err());
        let laurent = WienerElement::monomial(Complex::new(1.0, 0.0), -1);
        assert!(matches!(classify_roots(&laurent, 1e-9), Err(Error::NotCausal { .. })));
    }

    #[test]
    fn invert_causal_geometric() {
        let r = invert_causal(&real(&[1.0, -0.5]), 1000, 1e-10).unwrap();
        assert_eq!(r.side, InversionSide::Causal);
        assert_eq!(r.truncation_len, 35);
        for (n, g) in r.inverse.coeffs().iter().enumerate() {
            assert!((g.re - 0.5f64.powi(n as i32)).abs() < 1e-16);
        }
        assert!(r.tail_bound <= 1e-10);
        // exact remaining mass Σ_{n≥35} 2^-n
        assert!(r.tail_bound >= 2.0 * 0.5f64.powi(35) * (1.0 - 1e-9));
    }

    #[test]
    fn invert_causal_constant() {
        let r = invert_causal(&real(&[1.0]), 10, 1e-12).unwrap();
        assert_eq!(r.inverse, real(&[1.0]));
        assert_eq!(r.tail_bound, 0.0);
        assert_eq!(r.truncation_len, 1);
    }

    #[test]
    fn invert_causal_quadratic_matches_long_division() {
        let f = real(&[1.0, -0.5, -0.06]);
        let r = invert_causal(&f, 1000, 1e-12).unwrap();
        // long division of 1 by f, carried out on the remainder polynomial
        let mut rem = vec![1.0f64; 1];
        rem.resize(r.truncation_len + 3, 0.0);
        let mut q = Vec::new();
        for n in 0..r.truncation_len {
            let c = rem[n];
            q.push(c);
            rem[n] -= c;
            rem[n + 1] += 0.5 * c;
            rem[n + 2] += 0.06 * c;
        }
        for (a, b) in r.inverse.coeffs().iter().zip(&q) {
            assert!((a.re - b).abs() < 1e-14);
        }
        let resid = &f.multiply(&r.inverse) - &WienerElement::one();
        assert!(resid.l1_norm() < 1e-9);
        assert!(resid.l1_norm() <= r.tail_bound);
    }

    #[test]
    fn invert_causal_rejections() {
        match invert_causal(&real(&[1.0, -2.0]), 100, 1e-8) {
            Err(Error::NotInvertible { verdict, inside, .. }) => {
                assert_eq!(verdict, Verdict::NonInvertible);
                assert_eq!(inside, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            invert_causal(&real(&[1.0, -1.0]), 100, 1e-8),
            Err(Error::NotInvertible { verdict: Verdict::Borderline, .. })
        ));
        match invert_causal(&real(&[1.0, -0.999]), 50, 1e-8) {
            Err(Error::TailNotCertified { max_len, achieved, .. }) => {
                assert_eq!(max_len, 50);
                assert!(achieved > 1e-8);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(invert_causal(&real(&[1.0]), 10, 0.0).is_err());
    }

    #[test]
    fn anticausal_expansion_of_one_minus_two_z() {
        let f = real(&[1.0, -2.0]);
        let r = invert_anticausal(&f, 1000, 1e-15).unwrap();
        assert_eq!(r.side, InversionSide::Anticausal);
        assert_eq!(r.inverse.last_index(), -1);
        for k in 1..=40 {
            let c = r.inverse.coeff(-k);
            assert!((c.re + 0.5f64.powi(k as i32)).abs() < 1e-15, "k = {k}");
        }
        // residual is exactly the tail term -(1/2)^L z^{-L}
        let l = r.truncation_len as i64;
        let resid = &f.multiply(&r.inverse) - &WienerElement::one();
        assert_eq!(resid.support_len(), 1);
        assert_eq!(resid.offset(), -l);
        assert!((resid.coeff(-l).re + 0.5f64.powi(l as i32)).abs() < 1e-30);
    }

    #[test]
    fn anticausal_monomial() {
        let f = WienerElement::monomial(Complex::new(-2.0, 0.0), 1);
        let r = invert_anticausal(&f, 10, 1e-12).unwrap();
        assert_eq!(r.inverse, WienerElement::monomial(Complex::new(-0.5, 0.0), -1));
        assert_eq!(r.tail_bound, 0.0);
    }

    #[test]
    fn anticausal_rejects_outside_or_mixed() {
        assert!(matches!(
            invert_anticausal(&real(&[1.0, -0.5]), 100, 1e-8),
            Err(Error::NotAnticausallyInvertible { .. })
        ));
        // roots 0.5 and 2
        let mixed = real(&[1.0, -2.5, 1.0]);
        assert!(invert_anticausal(&mixed, 100, 1e-8).is_err());
        assert!(invert_causal(&mixed, 100, 1e-8).is_err());
        assert!(invert_anticausal(&real(&[2.0]), 100, 1e-8).is_err());
    }

    #[test]
    fn asymmetry_examples() {
        let rows = asymmetry_report(&real(&[1.0, -2.0]), &[4, 8, 16]).unwrap();
        for row in &rows {
            let nb = row.norm_circulant_inverse.unwrap();
            assert!((nb - 1.0).abs() < 1e-12);
            let nt = row.norm_triangular_inverse.unwrap();
            let n = row.dim as i32;
            assert!(nt >= 2f64.powi(n - 1) / n as f64);
            assert!((row.cond_circulant.unwrap() - 3.0).abs() < 1e-12);
        }
        let rows = asymmetry_report(&real(&[1.0, -0.5]), &[2, 5, 33, 128]).unwrap();
        for row in &rows {
            assert!(row.norm_circulant_inverse.unwrap() <= 2.0 + 1e-12);
            assert!(row.norm_triangular_inverse.unwrap() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn asymmetry_reports_singular_circulant() {
        // 1 - z vanishes at ω^0 = 1 for every N
        let rows = asymmetry_report(&real(&[1.0, -1.0]), &[4]).unwrap();
        assert_eq!(rows[0].norm_circulant_inverse, None);
        assert!(rows[0].norm_triangular_inverse.is_some());
        // z has a_0 = 0, so the triangular compression is singular
        let z = WienerElement::monomial(Complex::new(1.0, 0.0), 1);
        let rows = asymmetry_report(&z, &[3]).unwrap();
        assert_eq!(rows[0].norm_triangular_inverse, None);
        assert!((rows[0].norm_circulant_inverse.unwrap() - 1.0f64).abs() < 1e-12);
    }
}
