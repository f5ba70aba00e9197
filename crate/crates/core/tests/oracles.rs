mod common;

use common::*;
use nalgebra::DMatrix;
use shiftop_core::linalg::{largest_singular_value_lanczos, DenseMatrix, DENSE_SVD_LIMIT};
use shiftop_core::operators::{isometry_sweep_with_grid, matrix_norm};
use shiftop_core::*;

fn sort_by_angle(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap().then(a.norm().partial_cmp(&b.norm()).unwrap()));
    v
}

fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut rest = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (i, d) = rest
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .fold((0, f64::INFINITY), |m, c| if c.1 < m.1 { c } else { m });
        worst = worst.max(d);
        rest.remove(i);
    }
    worst
}

#[test]
fn unilateral_norm_at_512_approaches_three() {
    let op = build_unilateral(&real(&[1.0, -2.0]), 512).unwrap();
    let got = operator_norm(&op);
    let want = oracle_norm(&op.matrix);
    assert!((got - want).abs() <= 1e-8 * want, "{got} vs {want}");
    let delta = 3.0 - got;
    assert!(delta > 0.0 && delta < 0.02, "delta = {delta}");
}

#[test]
fn operator_norm_matches_svd_oracle_on_complex_symbols() {
    let f = WienerElement64::new(
        vec![
            Complex64::new(0.3, -1.1),
            Complex64::new(1.7, 0.4),
            Complex64::new(-0.2, 0.9),
            Complex64::new(0.5, 0.5),
        ],
        1,
    );
    for n in [1, 2, 5, 33, 128] {
        let op = build_unilateral(&f, n).unwrap();
        let want = oracle_norm(&op.matrix);
        assert!((operator_norm(&op) - want).abs() <= 1e-8 * want.max(1e-300), "N = {n}");
        let circ = build_bilateral(&f, n.max(5)).unwrap();
        let want = oracle_norm(&circ.matrix);
        assert!((operator_norm(&circ) - want).abs() <= 1e-8 * want, "N = {n}");
    }
}

#[test]
fn iterative_norm_above_dense_limit_matches_oracle() {
    let n = DENSE_SVD_LIMIT + 76;
    let f = real(&[1.0, 0.7, -0.4, 0.25]);
    let op = build_unilateral(&f, n).unwrap();
    let got = operator_norm(&op);
    let m = op.matrix.real_part();
    let want = DMatrix::from_fn(n, n, |i, j| m[(i, j)]).singular_values().max();
    assert!((got - want).abs() <= 1e-8 * want, "{got} vs {want}");
}

#[test]
fn lanczos_on_random_rectangular_matrix() {
    let a = DenseMatrix::from_fn(40, 25, |i, j| {
        Complex64::new(((i * 7 + j * 3) % 11) as f64 - 5.0, ((i + 2 * j) % 5) as f64 * 0.3)
    });
    let got = largest_singular_value_lanczos(&a, 1e-13, 25);
    let want = oracle_norm(&a);
    assert!((got - want).abs() <= 1e-8 * want);
    assert!((matrix_norm(&a) - want).abs() <= 1e-8 * want);
}

#[test]
fn circulant_spectrum_matches_dense_eigensolver() {
    let f = real(&[1.0, -2.0]);
    let circ = build_bilateral(&f, 4).unwrap();
    let m = circ.matrix.real_part();
    let eig: Vec<Complex64> = DMatrix::from_fn(4, 4, |i, j| m[(i, j)])
        .complex_eigenvalues()
        .iter()
        .copied()
        .collect();
    let want = [
        Complex64::new(-1.0, 0.0),
        Complex64::new(1.0, -2.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(1.0, 2.0),
    ];
    assert!(multiset_distance(&eig, &want) < 1e-10);
    let spectrum = circ.circulant_spectrum().unwrap();
    assert!(multiset_distance(&spectrum, &want) < 1e-12);
}

#[test]
fn circulant_spectrum_of_laurent_symbol_matches_schur() {
    let f = WienerElement64::new(
        vec![Complex64::new(0.5, 1.0), Complex64::new(-1.0, 0.25), Complex64::new(2.0, 0.0)],
        -1,
    );
    for n in [3, 8, 17] {
        let circ = build_bilateral(&f, n).unwrap();
        let schur = nalgebra::Schur::new(to_nalgebra(&circ.matrix));
        let (_, t) = schur.unpack();
        let eig: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
        let values = f.circle_values_for_dim(n);
        assert!(multiset_distance(&eig, &values) < 1e-8, "N = {n}");
        let spectrum = circ.circulant_spectrum().unwrap();
        assert!(multiset_distance(&sort_by_angle(spectrum), &sort_by_angle(values)) < 1e-12);
    }
}

trait CircleValues {
    fn circle_values_for_dim(&self, n: usize) -> Vec<Complex64>;
}

impl CircleValues for WienerElement64 {
    fn circle_values_for_dim(&self, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| {
                let w = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64);
                (self.offset()..=self.last_index()).map(|j| self.coeff(j) * w.powi(j as i32)).sum()
            })
            .collect()
    }
}

#[test]
fn rayleigh_quotient_near_boundary_point() {
    let f = real(&[1.0, -2.0]);
    let w = SzegoVector64::new(Complex64::new(-0.9, 0.0), 512).unwrap();
    let got = rayleigh_quotient(&f, &w).unwrap();
    // direct quadratic form k^H A k / k^H k
    let a = build_unilateral(&f, 512).unwrap().matrix;
    let k = w.values();
    let ak = a.mul_vec(k);
    let num: Complex64 = k.iter().zip(&ak).map(|(x, y)| x.conj() * y).sum();
    let den: f64 = k.iter().map(|x| x.norm_sqr()).sum();
    let want = num / den;
    assert!((got - want).norm() < 1e-12);
    assert!((got.re - 2.8).abs() < 0.01 && got.im.abs() < 1e-12, "{got}");
}

#[test]
fn isometry_sweep_gaps_decrease() {
    let f = real(&[1.0, -2.0]);
    let dims = [4, 16, 64, 256];
    let rows = isometry_sweep(&f, &dims).unwrap();
    for (row, &n) in rows.iter().zip(&dims) {
        let want = oracle_norm(&build_unilateral(&f, n).unwrap().matrix);
        assert_eq!(row.dim, n);
        assert!((row.norm - want).abs() <= 1e-8 * want);
        assert!(row.gap >= 0.0);
    }
    assert!(rows.windows(2).all(|w| w[1].gap < w[0].gap));
    assert!(rows[3].gap < 0.05);
}

#[test]
fn isometry_sweep_trivial_symbols() {
    let one = isometry_sweep_with_grid(&real(&[1.0]), &[1, 3, 9], 64).unwrap();
    assert!(one.iter().all(|r| r.gap.abs() < 1e-14));
    let z = WienerElement64::monomial(Complex64::new(1.0, 0.0), 1);
    let rows = isometry_sweep_with_grid(&z, &[2, 5, 40], 64).unwrap();
    assert!(rows.iter().all(|r| r.gap.abs() < 1e-14));
}

#[test]
fn sup_norm_dense_grid_oracle() {
    let f = real(&[1.0, -2.0]);
    assert!((f.sup_norm(4096).unwrap() - 3.0).abs() < 1e-6);
    let brute = (0..100_000)
        .map(|k| {
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / 100_000.0);
            (Complex64::new(1.0, 0.0) - 2.0 * z).norm()
        })
        .fold(0.0, f64::max);
    assert!((f.sup_norm(4096).unwrap() - brute).abs() < 1e-6);
}

#[test]
fn triangular_inverse_of_counterexample_has_powers_of_two() {
    let f = real(&[1.0, -2.0]);
    for n in [4, 9, 20] {
        let inv = build_unilateral(&f, n).unwrap().matrix.lower_triangular_inverse().unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = if i >= j { 2f64.powi((i - j) as i32) } else { 0.0 };
                assert_eq!(inv[(i, j)], Complex64::new(want, 0.0));
            }
        }
        let rows = asymmetry_report(&f, &[n]).unwrap();
        let want = oracle_norm(&inv);
        let got = rows[0].norm_triangular_inverse.unwrap();
        assert!((got - want).abs() <= 1e-8 * want);
        assert!(got >= 2f64.powi(n as i32 - 1) / n as f64);
    }
}

#[test]
fn invertible_symbol_has_bounded_inverses() {
    let f = real(&[1.0, -0.5]);
    let rows = asymmetry_report(&f, &[2, 8, 64, 256]).unwrap();
    for r in rows {
        assert!(r.norm_circulant_inverse.unwrap() <= 2.0 + 1e-9);
        assert!(r.norm_triangular_inverse.unwrap() <= 2.0 + 1e-9, "N = {}", r.dim);
    }
}

#[test]
fn wold_recovers_invertible_representatives() {
    let w = wold_estimate::<f64>(&[1.25, 0.5], 1).unwrap();
    assert!(w.converged);
    assert!((w.transfer.coeff(1).re - 0.5).abs() < 1e-6);
    assert!((w.variance - 1.0).abs() < 1e-6);

    let w = wold_estimate::<f64>(&[5.0, -2.0], 1).unwrap();
    assert!(w.converged);
    assert!((w.transfer.coeff(0).re - 1.0).abs() < 1e-12);
    assert!((w.transfer.coeff(1).re + 0.5).abs() < 1e-6);
    assert!((w.variance - 4.0).abs() < 1e-6);
}
