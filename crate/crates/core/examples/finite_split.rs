//! Finite-section singular values, the split at min_m and limit vectors.

use pseudomult::classify::split_scale;
use pseudomult::finite::*;
use pseudomult::kernelzoo::*;

fn main() -> pseudomult::error::Result<()> {
    let kernel = Kernel::from_id("szego")?;
    let phi = CandidateFunction::from_id("inv_z")?;
    let sampler = Sampler::new(Scheme::RadialGrid { rings: Some(2), max_r: Some(0.8) });
    let sample = sample_domain(&kernel, &sampler, 10, Some(&phi))?;

    let fm = FiniteMultiplier::new(&kernel, &phi, &sample)?;
    let s: Vec<String> = fm.singular_values().iter().map(|x| format!("{x:.6}")).collect();
    println!("K-singular values: {}", s.join(" "));

    let t0 = split_scale(&fm, 1)?;
    let split = schmidt_split(&fm, 1, t0)?;
    println!(
        "split at t0 = {t0:.6}: {} rank-one term(s), residual {:.2e}, B spectrum in [{:.2e}, {:.6}]",
        split.u_vectors.len(),
        split.residual,
        split.b_spectrum[0],
        split.b_spectrum.last().unwrap()
    );

    let char0 = CandidateFunction::from_id("char0")?;
    let sampler = Sampler::new(Scheme::RadialGrid { rings: None, max_r: None })
        .with_extra_points([DomainPoint::real(0.0)]);
    let samples = nested_samples(&kernel, &sampler, &[8, 14, 20], Some(&char0))?;
    let trace = limit_vector(&kernel, &char0, &samples, 1, Some(DomainPoint::real(0.0)))?;
    println!("χ₀: overlaps {:?}", trace.overlap_sequence);
    println!("χ₀: alignment with k₀ {:?}", trace.reference_alignment);
    Ok(())
}
