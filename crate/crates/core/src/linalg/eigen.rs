//! Eigenvalues of complex upper Hessenberg matrices and polynomial roots via
//! the companion matrix.

use num_complex::Complex;
use num_traits::{One, Zero};

use super::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Diagonal similarity scaling by powers of two (Parlett–Reinsch) so that
/// row and column norms are comparable. Keeps Hessenberg structure.
pub fn balance<T: Scalar>(a: &mut DenseMatrix<Complex<T>>) {
    let n = a.rows();
    let radix = T::lit(2.0);
    let radix2 = radix * radix;
    let one1 = |c: Complex<T>| c.re.abs() + c.im.abs();
    loop {
        let mut done = true;
        for i in 0..n {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 0..n {
                if j != i {
                    c += one1(a[(j, i)]);
                    r += one1(a[(i, j)]);
                }
            }
            if c.is_zero() || r.is_zero() {
                continue;
            }
            let s = c + r;
            let mut g = r / radix;
            let mut f = T::one();
            while c < g {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= radix2;
            }
            if (c + r) / f < T::lit(0.95) * s {
                done = false;
                let ginv = T::one() / f;
                for j in 0..n {
                    a[(i, j)] *= ginv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Complex Givens rotation `G = [[c, s], [-s̄, c]]` with `G [a; b] = [r; 0]`.
fn givens<T: Scalar>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    let na = a.norm();
    let r = na.hypot(b.norm());
    if r.is_zero() {
        return (T::one(), Complex::zero());
    }
    if na.is_zero() {
        return (T::zero(), Complex::one());
    }
    let c = na / r;
    let s = (a / na) * b.conj() / r;
    (c, s)
}

/// Eigenvalues of an upper Hessenberg matrix by single-shift QR with
/// Wilkinson shifts and exceptional shifts on stagnation.
pub fn hessenberg_eigenvalues<T: Scalar>(mut h: DenseMatrix<Complex<T>>) -> Result<Vec<Complex<T>>> {
    let n = h.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let eps = T::epsilon();
    let mut eig = vec![Complex::zero(); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let max_total = 60 * n.max(4);
    let mut rots: Vec<(T, Complex<T>)> = Vec::with_capacity(n);
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        // look for a negligible subdiagonal entry
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s.is_zero() { T::one() } else { s };
            if h[(lo, lo - 1)].norm() <= eps * s {
                h[(lo, lo - 1)] = Complex::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > max_total {
            return Err(Error::NoConvergence { iterations: total });
        }
        let shift = if iter % 11 == 10 {
            // exceptional shift
            let m = h[(hi, hi - 1)].norm()
                + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { T::zero() };
            h[(hi, hi)] + Complex::new(m * T::lit(0.75), m * T::lit(0.5))
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        rots.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rots.push((c, s));
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
            h[(k + 1, k)] = Complex::zero();
        }
        for (idx, &(c, s)) in rots.iter().enumerate() {
            let k = lo + idx;
            let last = (k + 2).min(hi);
            for i in lo..=last {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + s.conj() * y;
                h[(i, k + 1)] = -s * x + y * c;
            }
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(eig)
}

/// Eigenvalue of `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift<T: Scalar>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let two = T::lit(2.0);
    let half = (a - d) / two;
    let disc = (half * half + b * c).sqrt();
    let l1 = d + half + disc;
    let l2 = d + half - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Roots of `c_0 + c_1 z + ... + c_n z^n` (`c_n != 0`) as eigenvalues of the
/// balanced companion matrix.
pub fn polynomial_roots<T: Scalar>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let n = coeffs.len().saturating_sub(1);
    if coeffs.is_empty() || coeffs[n].is_zero() {
        return Err(Error::InvalidArgument("leading coefficient must be nonzero".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    let mut comp = DenseMatrix::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = Complex::one();
    }
    for i in 0..n {
        comp[(i, n - 1)] = -coeffs[i] / lead;
    }
    balance(&mut comp);
    hessenberg_eigenvalues(comp)
}
