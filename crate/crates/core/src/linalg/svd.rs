//! Largest singular value of a dense matrix.
//!
//! The dense route reduces the matrix to bidiagonal form with Householder
//! reflectors and bisects the Golub–Kahan tridiagonal for its top
//! eigenvalue. The iterative route runs Golub–Kahan–Lanczos with full
//! reorthogonalization and bisects the small projected bidiagonal.

use num_traits::{Float, One, Zero};

use super::DenseMatrix;
use crate::scalar::{Entry, Scalar};

/// Matrices with more rows than this use the iterative route in
/// [`largest_singular_value`].
pub const DENSE_SVD_LIMIT: usize = 1024;

/// Largest singular value, dense up to [`DENSE_SVD_LIMIT`] and Lanczos above.
pub fn largest_singular_value<E: Entry>(a: &DenseMatrix<E>) -> E::Real {
    if a.rows().max(a.cols()) <= DENSE_SVD_LIMIT {
        largest_singular_value_dense(a)
    } else {
        largest_singular_value_lanczos(a, E::Real::lit(1e-13), a.cols().min(600))
    }
}

/// Householder bidiagonalization followed by bisection.
pub fn largest_singular_value_dense<E: Entry>(a: &DenseMatrix<E>) -> E::Real {
    let scale = a.max_modulus();
    if scale.is_zero() || a.rows() == 0 || a.cols() == 0 {
        return E::Real::zero();
    }
    // work with the tall orientation so the bidiagonal is square
    let (m, n) = (a.rows(), a.cols());
    let inv = E::Real::one() / scale;
    let mut w = if m >= n {
        a.map(|x| x.scale(inv))
    } else {
        DenseMatrix::from_fn(n, m, |i, j| a[(j, i)].conjugate().scale(inv))
    };
    let (d, e) = bidiagonalize(&mut w);
    bidiagonal_max_singular_value(&d, &e) * scale
}

/// Householder reflector `H = I − β u uᴴ` (Hermitian, unitary) mapping `x`
/// onto a multiple of `e_1`. Returns `None` when `x` is already of that form.
fn reflector<E: Entry>(x: &mut [E]) -> Option<E::Real> {
    let tail: E::Real = x[1..].iter().map(|v| v.modulus_sq()).sum();
    if tail.is_zero() {
        return None;
    }
    let norm = (x[0].modulus_sq() + tail).sqrt();
    let a0 = x[0].modulus();
    let phase = if a0.is_zero() {
        E::one()
    } else {
        x[0].scale(E::Real::one() / a0)
    };
    // u = x + phase·‖x‖·e1 avoids cancellation
    x[0] += phase.scale(norm);
    let unorm2 = x[0].modulus_sq() + tail;
    Some(E::Real::lit(2.0) / unorm2)
}

/// Reduces `a` (m ≥ n) in place and returns the moduli of the diagonal and
/// superdiagonal of the resulting upper bidiagonal matrix.
fn bidiagonalize<E: Entry>(a: &mut DenseMatrix<E>) -> (Vec<E::Real>, Vec<E::Real>) {
    let (m, n) = (a.rows(), a.cols());
    let mut d = Vec::with_capacity(n);
    let mut e = Vec::with_capacity(n.saturating_sub(1));
    let mut u = vec![E::zero(); m.max(n)];
    let mut w = vec![E::zero(); n];
    for k in 0..n {
        // left reflector on column k, rows k..m
        let len = m - k;
        for i in 0..len {
            u[i] = a[(k + i, k)];
        }
        if let Some(beta) = reflector(&mut u[..len]) {
            for x in w[k..n].iter_mut() {
                *x = E::zero();
            }
            for i in 0..len {
                let ui = u[i].conjugate();
                let row = &a.row(k + i)[k..n];
                for (wj, &aij) in w[k..n].iter_mut().zip(row) {
                    *wj += ui * aij;
                }
            }
            for i in 0..len {
                let ui = u[i].scale(beta);
                let row = &mut a.row_mut(k + i)[k..n];
                for (aij, &wj) in row.iter_mut().zip(&w[k..n]) {
                    *aij -= ui * wj;
                }
            }
        }
        d.push(a[(k, k)].modulus());
        if k + 1 >= n {
            break;
        }
        // right reflector on row k, columns k+1..n, built from the conjugated row
        let len = n - k - 1;
        for j in 0..len {
            u[j] = a[(k, k + 1 + j)].conjugate();
        }
        if let Some(beta) = reflector(&mut u[..len]) {
            for i in k..m {
                let row = &mut a.row_mut(i)[k + 1..n];
                let s = row
                    .iter()
                    .zip(&u[..len])
                    .fold(E::zero(), |acc, (&x, &uj)| acc + x * uj)
                    .scale(beta);
                for (x, &uj) in row.iter_mut().zip(&u[..len]) {
                    *x -= s * uj.conjugate();
                }
            }
        }
        e.push(a[(k, k + 1)].modulus());
    }
    (d, e)
}

/// Number of eigenvalues of the symmetric tridiagonal with zero diagonal and
/// off-diagonal `b` that are strictly less than `x`.
fn sturm_count<T: Scalar>(b: &[T], x: T) -> usize {
    let tiny = T::min_positive_value();
    let mut count = 0;
    let mut q = -x;
    if q < T::zero() {
        count += 1;
    }
    for &bi in b {
        let prev = if q.abs() < tiny { -tiny } else { q };
        q = -x - bi * bi / prev;
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

/// Top singular value of the upper bidiagonal matrix with diagonal `d` and
/// superdiagonal `e`, by bisection on the Golub–Kahan tridiagonal
/// `[0 d1 0 e1 0 d2 ...]` whose eigenvalues are `±σ_i`.
pub fn bidiagonal_max_singular_value<T: Scalar>(d: &[T], e: &[T]) -> T {
    let mut b = Vec::with_capacity(d.len() + e.len());
    for (i, &di) in d.iter().enumerate() {
        b.push(di.abs());
        if let Some(&ei) = e.get(i) {
            b.push(ei.abs());
        }
    }
    if b.is_empty() {
        return T::zero();
    }
    let dim = b.len() + 1;
    let mut hi = T::zero();
    for i in 0..dim {
        let left = if i > 0 { b[i - 1] } else { T::zero() };
        let right = if i < b.len() { b[i] } else { T::zero() };
        hi = hi.max(left + right);
    }
    if hi.is_zero() {
        return T::zero();
    }
    let mut lo = T::zero();
    let two = T::lit(2.0);
    for _ in 0..200 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(&b, mid) == dim {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= T::epsilon() * hi {
            break;
        }
    }
    (lo + hi) / two
}

fn norm<E: Entry>(v: &[E]) -> E::Real {
    v.iter().map(|x| x.modulus_sq()).sum::<E::Real>().sqrt()
}

fn orthogonalize<E: Entry>(v: &mut [E], basis: &[Vec<E>]) {
    // two passes of classical Gram–Schmidt
    for _ in 0..2 {
        for q in basis {
            let c = q
                .iter()
                .zip(v.iter())
                .fold(E::zero(), |acc, (&qi, &vi)| acc + qi.conjugate() * vi);
            for (vi, &qi) in v.iter_mut().zip(q) {
                *vi -= c * qi;
            }
        }
    }
}

/// Golub–Kahan–Lanczos estimate of the largest singular value.
///
/// Stops when two successive estimates agree to `rel_tol` or after
/// `max_steps` steps. Convergence slows when the top singular values are
/// tightly clustered.
pub fn largest_singular_value_lanczos<E: Entry>(
    a: &DenseMatrix<E>,
    rel_tol: E::Real,
    max_steps: usize,
) -> E::Real {
    let n = a.cols();
    if n == 0 || a.rows() == 0 || a.max_modulus().is_zero() {
        return E::Real::zero();
    }
    let max_steps = max_steps.clamp(1, n.min(a.rows()));
    // deterministic, non-degenerate start vector
    let mut v: Vec<E> = (0..n)
        .map(|i| E::from_real(E::Real::one() + E::Real::from_len(i % 7) / E::Real::lit(10.0)))
        .collect();
    let nv = norm(&v);
    v.iter_mut().for_each(|x| *x = x.scale(E::Real::one() / nv));

    let mut vs: Vec<Vec<E>> = vec![v];
    let mut us: Vec<Vec<E>> = Vec::new();
    let mut alphas: Vec<E::Real> = Vec::new();
    let mut betas: Vec<E::Real> = Vec::new();
    let mut estimate = E::Real::zero();
    let breakdown = E::Real::epsilon() * a.max_modulus() * E::Real::from_len(n);

    for step in 0..max_steps {
        let mut u = a.mul_vec(vs.last().unwrap());
        orthogonalize(&mut u, &us);
        let alpha = norm(&u);
        alphas.push(alpha);
        if alpha <= breakdown {
            break;
        }
        u.iter_mut().for_each(|x| *x = x.scale(E::Real::one() / alpha));
        us.push(u);

        let mut v = a.adjoint_mul_vec(us.last().unwrap());
        orthogonalize(&mut v, &vs);
        let beta = norm(&v);

        let current = bidiagonal_max_singular_value(&alphas, &betas);
        let converged = step > 2 && (current - estimate).abs() <= rel_tol * current;
        estimate = current;
        if converged || beta <= breakdown {
            break;
        }
        betas.push(beta);
        v.iter_mut().for_each(|x| *x = x.scale(E::Real::one() / beta));
        vs.push(v);
    }
    bidiagonal_max_singular_value(&alphas, &betas).max(estimate)
}
