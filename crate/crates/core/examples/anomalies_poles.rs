//! Anomaly detection, pole-form fit and the multiplicity bound.

use num_complex::Complex64;
use pseudomult::classify::*;
use pseudomult::kernelzoo::*;
use pseudomult::pick::{bisect_sm, BisectOptions};
use pseudomult::spectral::DEFAULT_REL_TOL;

fn main() -> pseudomult::error::Result<()> {
    let szego = Kernel::from_id("szego")?;
    let char0 = CandidateFunction::from_id("char0")?;
    let sampler = Sampler::new(Scheme::RadialGrid { rings: None, max_r: None })
        .with_extra_points([DomainPoint::real(0.0)]);
    let sample = sample_domain(&szego, &sampler, 20, Some(&char0))?;
    let scan = detect_anomalies(&szego, &char0, &sample)?;
    for c in &scan.candidates {
        println!("anomaly candidate {} (alignment {:.6})", c.point, c.alignment);
    }

    let phi = CandidateFunction::from_id("pole_ratio:0.3")?;
    let ladder = Sampler::new(Scheme::Ladder {
        base: Box::new(Scheme::RadialGrid { rings: Some(1), max_r: Some(0.85) }),
        base_size: 16,
        focus: Some([0.3, 0.0]),
        r0: 0.3,
        ratio: 0.5,
        per_level: 2,
        angles: Vec::new(),
    });
    let samples = nested_samples(&szego, &ladder, &[20, 22], Some(&phi))?;
    let fit = fit_pole_form(&szego, &phi, &samples, &default_alpha_grid(&szego), DEFAULT_REL_TOL)?;
    println!("λ/(λ − 0.3): fitted α = {} over {} grid points", fit.alpha, fit.grid_size);

    let inv = CandidateFunction::from_id("inv_z")?;
    let s = sample_domain(
        &szego,
        &Sampler::new(Scheme::RadialGrid { rings: Some(2), max_r: Some(0.8) })
            .with_extra_points([DomainPoint::real(0.25)]),
        12,
        Some(&inv),
    )?;
    let s1 = bisect_sm(&szego, &inv, &s, 1, &BisectOptions::default())?;
    let check = verify_multiplicity(&inv, &s, Complex64::new(4.0, 0.0), s1.upper, 1)?;
    println!("1/λ = 4 at {} sample point(s); bound respected: {}", check.count, check.bound_respected);
    Ok(())
}
