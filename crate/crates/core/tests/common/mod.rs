#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use pseudomult::spectral::HermitianMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |_, _| random_complex(rng))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> HermitianMatrix {
    let a = random_matrix(rng, n);
    HermitianMatrix::from_matrix(&a + a.adjoint())
}

/// `B*B + shift·I`, positive definite for `shift > 0`.
pub fn random_pd(rng: &mut ChaCha8Rng, n: usize, shift: f64) -> HermitianMatrix {
    let b = random_matrix(rng, n);
    HermitianMatrix::from_matrix(b.adjoint() * &b + DMatrix::identity(n, n) * c(shift, 0.0))
}

/// Coefficients of `det(λI − M)`, highest degree first, by Faddeev–LeVerrier.
pub fn char_poly(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    let n = m.nrows();
    let id = DMatrix::<Complex64>::identity(n, n);
    let mut coeffs = vec![c(1.0, 0.0)];
    let mut mk = DMatrix::<Complex64>::zeros(n, n);
    for k in 1..=n {
        mk = m * &mk + &id * coeffs[k - 1];
        let am = m * &mk;
        coeffs.push(-am.trace() / c(k as f64, 0.0));
    }
    coeffs
}

fn horner(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().fold(c(0.0, 0.0), |acc, &a| acc * z + a)
}

/// All roots of a monic polynomial by Durand–Kerner, then Newton polishing.
pub fn poly_roots(p: &[Complex64]) -> Vec<Complex64> {
    let n = p.len() - 1;
    let radius = 1.0 + p[1..].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let seed = c(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..5000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut den = c(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = horner(p, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    let dp: Vec<Complex64> = p[..n]
        .iter()
        .enumerate()
        .map(|(i, &a)| a * c((n - i) as f64, 0.0))
        .collect();
    for zi in z.iter_mut() {
        for _ in 0..5 {
            let d = horner(&dp, *zi);
            if d.norm() > 0.0 {
                *zi -= horner(p, *zi) / d;
            }
        }
    }
    z
}

/// Eigenvalues of a Hermitian matrix from its characteristic polynomial.
pub fn char_poly_eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    let mut r: Vec<f64> = poly_roots(&char_poly(m.matrix())).iter().map(|z| z.re).collect();
    r.sort_by(|a, b| a.partial_cmp(b).unwrap());
    r
}

fn k_dot(k: &DMatrix<Complex64>, x: &DVector<Complex64>, y: &DVector<Complex64>) -> Complex64 {
    (y.adjoint() * k * x)[(0, 0)]
}

/// K-singular values of `a` by projected power iteration on `A^# A` with
/// deflation, where `A^# = K⁻¹A*K` is the K-adjoint.
pub fn power_iteration_k_singular_values(
    a: &DMatrix<Complex64>,
    k: &HermitianMatrix,
    seed: u64,
) -> Vec<f64> {
    let n = a.nrows();
    let km = k.matrix().clone();
    let k_inv = km.clone().lu().try_inverse().expect("invertible K");
    let op = &k_inv * a.adjoint() * &km * a;
    let mut rng = rng(seed);
    let mut found: Vec<DVector<Complex64>> = Vec::new();
    let mut values = Vec::new();
    for _ in 0..n {
        let mut x = DVector::from_fn(n, |_, _| random_complex(&mut rng));
        let project = |x: &mut DVector<Complex64>, found: &[DVector<Complex64>]| {
            for v in found {
                let coef = k_dot(&km, x, v);
                *x -= v * coef;
            }
        };
        let mut lambda = 0.0;
        for _ in 0..20_000 {
            project(&mut x, &found);
            let norm = k_dot(&km, &x, &x).re.sqrt();
            x /= c(norm, 0.0);
            let y = &op * &x;
            let next = k_dot(&km, &y, &x).re;
            let done = (next - lambda).abs() <= 1e-15 * next.abs().max(1e-300);
            lambda = next;
            x = y;
            if done {
                break;
            }
        }
        project(&mut x, &found);
        let norm = k_dot(&km, &x, &x).re.sqrt();
        x /= c(norm, 0.0);
        values.push(lambda.max(0.0).sqrt());
        found.push(x);
    }
    values
}

/// `max ‖Ax‖_K / ‖x‖_K` over random directions.
pub fn random_direction_norm(a: &DMatrix<Complex64>, k: &HermitianMatrix, trials: usize, seed: u64) -> f64 {
    let mut rng = rng(seed);
    let km = k.matrix();
    (0..trials)
        .map(|_| {
            let x = DVector::from_fn(a.ncols(), |_, _| random_complex(&mut rng));
            let ax = a * &x;
            (k_dot(km, &ax, &ax).re / k_dot(km, &x, &x).re).sqrt()
        })
        .fold(0.0, f64::max)
}
