mod common;

use common::*;
use num_complex::Complex64;
use pseudomult::kernelzoo::*;
use pseudomult::spectral::{inertia, DEFAULT_REL_TOL};
use pseudomult::Error;
use rand::Rng;

fn random_point(kernel: &Kernel, r: &mut rand_chacha::ChaCha8Rng) -> DomainPoint {
    loop {
        let z = match kernel.domain_kind() {
            DomainKind::UnitDisc | DomainKind::OffCenterDisc => {
                c(r.random_range(-0.97..0.97), r.random_range(-0.97..0.97))
            }
            DomainKind::WholePlane => c(r.random_range(-3.0..3.0), r.random_range(-3.0..3.0)),
            DomainKind::UnitInterval => c(r.random_range(0.0..=1.0), 0.0),
            DomainKind::PositiveIntegers => c(r.random_range(1..60) as f64, 0.0),
        };
        let p = DomainPoint::from(z);
        if kernel.contains(p) {
            return p;
        }
    }
}

#[test]
fn every_kernel_is_hermitian_on_random_pairs() {
    for (i, kernel) in Kernel::catalog().iter().enumerate() {
        let mut r = rng(1000 + i as u64);
        for _ in 0..1000 {
            let (a, b) = (random_point(kernel, &mut r), random_point(kernel, &mut r));
            let kab = kernel.eval(a, b);
            let kba = kernel.eval(b, a);
            let err = (kab - kba.conj()).norm();
            assert!(err <= 1e-14 * kab.norm().max(f64::MIN_POSITIVE), "{} at {a}, {b}", kernel.id());
            let kaa = kernel.eval(a, a);
            assert!(kaa.im == 0.0 && kaa.re >= 0.0, "{} diagonal at {a}", kernel.id());
        }
    }
}

#[test]
fn well_separated_grams_have_no_negative_eigenvalues() {
    for kernel in Kernel::catalog() {
        for n in [1, 4, 8, 12] {
            let sampler = Sampler::new(Scheme::default_for(kernel.domain_kind()));
            let sample = sample_domain(&kernel, &sampler, n, None).unwrap();
            let k = gram(&kernel, &sample).unwrap();
            assert_eq!(inertia(&k, DEFAULT_REL_TOL).unwrap().n_neg, 0, "{} n = {n}", kernel.id());
        }
        let random = Sampler::new(Scheme::UniformRandom { extent: None, seed: 3 });
        let sample = sample_domain(&kernel, &random, 10, None).unwrap();
        let k = gram(&kernel, &sample).unwrap();
        assert_eq!(inertia(&k, DEFAULT_REL_TOL).unwrap().n_neg, 0, "{} random", kernel.id());
    }
}

/// `∫_a^b g` by composite Simpson with `n` (even) panels.
fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = g(a) + g(b);
    for i in 1..n {
        s += g(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn sobolev_kernel_reproduces_t_squared() {
    let kernel = Kernel::from_id("sobolev").unwrap();
    let k = |s: f64, t: f64| kernel.eval(DomainPoint::real(t), DomainPoint::real(s)).re;
    for s in [0.25, 0.5, 0.75] {
        // Differences stay inside one piece, away from the kink at s.
        let dk = |t: f64, lo: f64, hi: f64| {
            let (a, b) = ((t - 1e-6).max(lo), (t + 1e-6).min(hi));
            (k(s, b) - k(s, a)) / (b - a)
        };
        let left = simpson(|t| t * t * k(s, t) + 2.0 * t * dk(t, 0.0, s), 0.0, s, 2000);
        let right = simpson(|t| t * t * k(s, t) + 2.0 * t * dk(t, s, 1.0), s, 1.0, 2000);
        let inner = left + right;
        assert!((inner - s * s).abs() <= 1e-6, "s = {s}: {inner} vs {}", s * s);
    }
}

#[test]
fn anomaly_kernel_is_an_orthogonal_sum() {
    let kernel = Kernel::from_id("anomaly").unwrap();
    let mut r = rng(17);
    for _ in 0..50 {
        let a = random_point(&kernel, &mut r);
        let b = random_point(&kernel, &mut r);
        let w = a.value() * b.value().conj();
        if w.norm() > 0.9 {
            continue;
        }
        // zH² has orthonormal basis z^n, n ≥ 1; Cg has the unit vector g.
        let mut series = c(0.0, 0.0);
        let mut power = c(1.0, 0.0);
        for _ in 0..2000 {
            power *= w;
            series += power;
        }
        let g = |z: Complex64| 1.0 / (z - 1.0);
        let direct = series + g(a.value()) * g(b.value()).conj();
        assert!((kernel.eval(a, b) - direct).norm() <= 1e-12 * direct.norm().max(1.0));
    }
}

#[test]
fn gram_examples() {
    let l2 = Kernel::from_id("l2").unwrap();
    let k = gram(&l2, &SampleSet::from_reals(&[1.0, 2.0, 3.0]).unwrap()).unwrap();
    assert_eq!(k.matrix(), &nalgebra::DMatrix::identity(3, 3));
    let szego = Kernel::from_id("szego").unwrap();
    let k = gram(&szego, &SampleSet::from_reals(&[0.0]).unwrap()).unwrap();
    assert_eq!(k.matrix()[(0, 0)], c(1.0, 0.0));
    let proj = Kernel::from_id("l2_projected").unwrap();
    let k = gram(&proj, &SampleSet::from_reals(&[1.0, 2.0]).unwrap()).unwrap();
    let want = [[0.25, -0.375], [-0.375, 0.8125]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((k.matrix()[(i, j)] - c(want[i][j], 0.0)).norm() < 1e-15);
        }
    }
}

#[test]
fn radial_grid_rings() {
    let szego = Kernel::from_id("szego").unwrap();
    let sampler = Sampler::new(Scheme::RadialGrid { rings: Some(3), max_r: Some(0.9) });
    let s = sample_domain(&szego, &sampler, 12, None).unwrap();
    assert_eq!(s.len(), 12);
    for r in [0.3, 0.6, 0.9] {
        let on_ring = s.values().iter().filter(|z| (z.norm() - r).abs() < 1e-12).count();
        assert_eq!(on_ring, 4, "radius {r}");
    }
}

#[test]
fn integer_range_enumerates() {
    let l2 = Kernel::from_id("l2").unwrap();
    let s = sample_domain(&l2, &Sampler::new(Scheme::IntegerRange { start: 1 }), 5, None).unwrap();
    assert_eq!(s.values(), (1..=5).map(|k| c(k as f64, 0.0)).collect::<Vec<_>>());
}

#[test]
fn seeded_random_sampling_is_reproducible() {
    let fock = Kernel::from_id("fock").unwrap();
    let sampler = Sampler::new(Scheme::UniformRandom { extent: Some(3.0), seed: 7 });
    let a = sample_domain(&fock, &sampler, 20, None).unwrap();
    let b = sample_domain(&fock, &sampler, 20, None).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.seed, Some(7));
    assert!(a.values().iter().all(|z| z.re.abs() <= 3.0 && z.im.abs() <= 3.0));
    let other = Sampler::new(Scheme::UniformRandom { extent: Some(3.0), seed: 8 });
    assert_ne!(a, sample_domain(&fock, &other, 20, None).unwrap());
}

#[test]
fn sampling_respects_separation_and_exclusions() {
    let szego = Kernel::from_id("szego").unwrap();
    let phi = CandidateFunction::from_id("inv_z").unwrap();
    let sampler = Sampler::new(Scheme::RadialGrid { rings: None, max_r: None })
        .with_extra_points([DomainPoint::real(0.0), DomainPoint::real(0.25)]);
    let s = sample_domain(&szego, &sampler, 20, Some(&phi)).unwrap();
    assert!(s.position(DomainPoint::real(0.0)).is_none());
    assert_eq!(s.position(DomainPoint::real(0.25)), Some(0));
    s.validate(&szego, Some(&phi)).unwrap();
    for (i, a) in s.values().iter().enumerate() {
        for b in &s.values()[..i] {
            assert!((a - b).norm() >= 1e-6);
        }
        assert!(a.norm() <= 0.995 + 1e-12);
    }
}

#[test]
fn incompatible_scheme_is_rejected() {
    let l2 = Kernel::from_id("l2").unwrap();
    let sampler = Sampler::new(Scheme::RadialGrid { rings: None, max_r: None });
    assert!(matches!(sample_domain(&l2, &sampler, 4, None), Err(Error::IncompatibleScheme { .. })));
}

#[test]
fn unsatisfiable_separation_is_an_error() {
    let sobolev = Kernel::from_id("sobolev").unwrap();
    let sampler = Sampler::new(Scheme::UniformRandom { extent: None, seed: 1 }).with_min_separation(0.3);
    assert!(matches!(sample_domain(&sobolev, &sampler, 10, None), Err(Error::Separation { .. })));
}

#[test]
fn nested_samples_are_prefixes() {
    let bergman = Kernel::from_id("bergman").unwrap();
    let sampler = Sampler::new(Scheme::RadialGrid { rings: None, max_r: None });
    let samples = nested_samples(&bergman, &sampler, &[5, 10, 20], None).unwrap();
    for w in samples.windows(2) {
        assert_eq!(w[0].points[..], w[1].points[..w[0].len()]);
    }
}

#[test]
fn points_load_from_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pts.json");
    std::fs::write(&path, "[[0.3, 0], [0.6, 0], [0, 0.9]]").unwrap();
    let s = SampleSet::load(&path).unwrap();
    assert_eq!(s.values(), vec![c(0.3, 0.0), c(0.6, 0.0), c(0.0, 0.9)]);
}

#[test]
fn condition_of_near_coincident_points_matches_closed_form() {
    let szego = Kernel::from_id("szego").unwrap();
    let (a, b) = (0.99f64, 0.99 - 1e-4);
    let k = gram(&szego, &SampleSet::from_reals(&[a, b]).unwrap()).unwrap();
    let (p, q, r) = (1.0 / (1.0 - a * a), 1.0 / (1.0 - a * b), 1.0 / (1.0 - b * b));
    let disc = ((p - r).powi(2) + 4.0 * q * q).sqrt();
    let closed = (p + r + disc) / (p + r - disc);
    let got = condition_estimate(&k);
    assert!((got - closed).abs() <= 1e-4 * closed, "{got} vs {closed}");
    assert!(got > 1e5);
}
