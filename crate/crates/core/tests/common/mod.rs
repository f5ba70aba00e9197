#![allow(dead_code)]

use nalgebra::DMatrix;
use proptest::prelude::*;
use shiftop_core::linalg::DenseMatrix;
use shiftop_core::{Complex64, WienerElement64};

pub fn real(c: &[f64]) -> WienerElement64 {
    WienerElement64::from_real(c)
}

pub fn to_nalgebra(m: &DenseMatrix<Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Largest singular value from nalgebra's SVD.
pub fn oracle_norm(m: &DenseMatrix<Complex64>) -> f64 {
    to_nalgebra(m).singular_values().max()
}

/// Expands `prod (1 - z / r)`.
pub fn from_roots(roots: &[Complex64]) -> WienerElement64 {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, &ci) in c.iter().enumerate() {
            next[i] += ci;
            next[i + 1] -= ci / r;
        }
        c = next;
    }
    WienerElement64::new(c, 0)
}

/// Real polynomial `prod (1 - z / r)` over the given roots and their conjugates.
pub fn real_from_roots(real_roots: &[f64], pairs: &[Complex64]) -> WienerElement64 {
    let mut roots: Vec<Complex64> = real_roots.iter().map(|&r| Complex64::new(r, 0.0)).collect();
    for &p in pairs {
        roots.push(p);
        roots.push(p.conj());
    }
    let f = from_roots(&roots);
    let c: Vec<f64> = f.coeffs().iter().map(|c| c.re).collect();
    real(&c)
}

/// Schoolbook convolution of coefficient lists.
pub fn convolve(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn coeff() -> impl Strategy<Value = Complex64> {
    (-2.0..=2.0f64, -2.0..=2.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

pub fn int_coeff() -> impl Strategy<Value = Complex64> {
    (-4i32..=4, -4i32..=4).prop_map(|(re, im)| Complex64::new(re as f64, im as f64))
}

pub fn causal(max_len: usize) -> impl Strategy<Value = WienerElement64> {
    (prop::collection::vec(coeff(), 1..=max_len), 0i64..3)
        .prop_map(|(c, off)| WienerElement64::new(c, off))
}

pub fn laurent(max_len: usize) -> impl Strategy<Value = WienerElement64> {
    (prop::collection::vec(coeff(), 1..=max_len), -6i64..6)
        .prop_map(|(c, off)| WienerElement64::new(c, off))
}

/// Point with modulus in `[lo, hi]` and arbitrary argument.
pub fn annulus(lo: f64, hi: f64) -> impl Strategy<Value = Complex64> {
    (lo..=hi, 0.0..std::f64::consts::TAU).prop_map(|(m, a)| Complex64::from_polar(m, a))
}

pub fn unimodular() -> impl Strategy<Value = Complex64> {
    (0.0..std::f64::consts::TAU).prop_map(|a| Complex64::from_polar(1.0, a))
}
