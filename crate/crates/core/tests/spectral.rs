mod common;

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng as _;
use pseudomult::spectral::*;

#[test]
fn eigenvalues_match_characteristic_polynomial_roots() {
    for seed in 0..5 {
        let m = random_hermitian(&mut rng(seed), 6);
        let got = hermitian_eigs(&m).unwrap().values;
        let want = char_poly_eigenvalues(&m);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-9, "seed {seed}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn eigenpair_residuals() {
    let m = random_hermitian(&mut rng(11), 8);
    let e = hermitian_eigs(&m).unwrap();
    for (i, &l) in e.values.iter().enumerate() {
        let v = e.vectors.column(i);
        let r = (m.matrix() * v - v * c(l, 0.0)).norm();
        assert!(r <= 1e-10 * m.norm_inf());
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn k_singular_values_match_power_iteration() {
    for seed in 0..3 {
        let mut r = rng(100 + seed);
        let a = random_matrix(&mut r, 5);
        let k = random_pd(&mut r, 5, 0.5);
        let got = k_singular_values(&a, &k).unwrap();
        let want = power_iteration_k_singular_values(&a, &k, seed);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-6 * w.max(1.0), "seed {seed}: {got:?} vs {want:?}");
        }
    }
}

#[test]
fn euclidean_k_singular_values_are_ordinary() {
    let mut r = rng(5);
    let a = random_matrix(&mut r, 6);
    let id = HermitianMatrix::from_real_diagonal(&[1.0; 6]);
    let got = k_singular_values(&a, &id).unwrap();
    // Square roots of the eigenvalues of A*A from the characteristic polynomial.
    let ata = HermitianMatrix::from_matrix(a.adjoint() * &a);
    let mut want: Vec<f64> = char_poly_eigenvalues(&ata).iter().map(|x| x.max(0.0).sqrt()).collect();
    want.reverse();
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() <= 1e-12 * want[0].max(1.0) * 10.0, "{got:?} vs {want:?}");
    }
}

#[test]
fn harmonic_diagonal_s_numbers() {
    let psi: Vec<f64> = (1..=10).map(|n| 1.0 / n as f64).collect();
    let a = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(10, psi.iter().map(|&x| c(x, 0.0))));
    let id = HermitianMatrix::from_real_diagonal(&[1.0; 10]);
    let s = k_singular_values(&a, &id).unwrap();
    for (m, v) in s.iter().enumerate() {
        assert!((v - 1.0 / (m + 1) as f64).abs() < 1e-14);
    }
}

#[test]
fn mixed_signs_from_negative_determinant() {
    let m = HermitianMatrix::from_rows(&[vec![c(-0.75, 0.0), c(0.25, 0.0)], vec![c(0.25, 0.0), c(1.0 / 3.0, 0.0)]]);
    // det < 0 forces one eigenvalue of each sign; the 2x2 closed form agrees.
    let (a, b, d) = (-0.75f64, 0.25f64, 1.0 / 3.0);
    let disc = ((a - d).powi(2) + 4.0 * b * b).sqrt();
    let closed = [(a + d - disc) / 2.0, (a + d + disc) / 2.0];
    assert!(a * d - b * b < 0.0);
    let ev = eigenvalues(&m).unwrap();
    assert!((ev[0] - closed[0]).abs() < 1e-14 && (ev[1] - closed[1]).abs() < 1e-14);
    let i = inertia(&m, DEFAULT_REL_TOL).unwrap();
    assert_eq!((i.n_neg, i.n_zero, i.n_pos), (1, 0, 1));
}

fn hermitian_strategy(max_n: usize) -> impl Strategy<Value = (u64, usize)> {
    (any::<u64>(), 1..=max_n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_monotonicity((seed, n) in hermitian_strategy(8)) {
        let mut r = rng(seed);
        let m = random_hermitian(&mut r, n);
        let b = random_matrix(&mut r, n);
        let p = HermitianMatrix::from_matrix(b.adjoint() * &b);
        let sum = HermitianMatrix::from_matrix(m.matrix() + p.matrix());
        let before = inertia(&m, DEFAULT_REL_TOL).unwrap();
        let after = inertia(&sum, DEFAULT_REL_TOL).unwrap();
        prop_assert!(after.n_neg <= before.n_neg);
    }

    #[test]
    fn sylvester_congruence((seed, n) in hermitian_strategy(6)) {
        let mut r = rng(seed);
        // Well-separated spectrum: a unitary conjugate of a diagonal with gaps ≥ 1.
        let signs: Vec<f64> = (0..n).map(|i| if r.random_bool(0.5) { 1.0 + i as f64 } else { -1.0 - i as f64 }).collect();
        let q = random_matrix(&mut r, n).qr().q();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, signs.iter().map(|&x| c(x, 0.0))));
        let m = HermitianMatrix::from_matrix(&q * d * q.adjoint());
        let s = random_matrix(&mut r, n) + DMatrix::identity(n, n) * c(3.0, 0.0);
        let congruent = HermitianMatrix::from_matrix(s.adjoint() * m.matrix() * &s);
        let a = inertia(&m, DEFAULT_REL_TOL).unwrap();
        let b = inertia(&congruent, DEFAULT_REL_TOL).unwrap();
        prop_assert_eq!((a.n_neg, a.n_zero, a.n_pos), (b.n_neg, b.n_zero, b.n_pos));
        prop_assert_eq!(a.n_neg, signs.iter().filter(|&&x| x < 0.0).count());
    }

    #[test]
    fn inertia_counts_sum_to_dimension((seed, n) in hermitian_strategy(10)) {
        let m = random_hermitian(&mut rng(seed), n);
        let i = inertia(&m, DEFAULT_REL_TOL).unwrap();
        prop_assert_eq!(i.n_neg + i.n_zero + i.n_pos, n);
    }
}
