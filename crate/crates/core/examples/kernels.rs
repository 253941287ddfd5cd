//! Kernel catalog, sampling and Gram conditioning.

use pseudomult::kernelzoo::*;

fn main() -> pseudomult::error::Result<()> {
    for kernel in Kernel::catalog() {
        let sampler = Sampler::new(Scheme::default_for(kernel.domain_kind()));
        let sample = sample_domain(&kernel, &sampler, 12, None)?;
        let k = gram(&kernel, &sample)?;
        println!(
            "{:<16} {:<14} n = {:>2}  cond(K) = {:.3e}",
            kernel.id(),
            kernel.domain_kind().name(),
            sample.len(),
            condition_estimate(&k)
        );
    }

    let szego = Kernel::from_id("szego")?;
    let a = DomainPoint::new(0.3, 0.1);
    let b = DomainPoint::new(-0.2, 0.5);
    println!("\nk(a, b) = {}  k(b, a) = {}", szego.eval(a, b), szego.eval(b, a));

    let sampler = Sampler::new(Scheme::RadialGrid { rings: Some(3), max_r: Some(0.9) });
    let nested = nested_samples(&szego, &sampler, &[6, 12, 24], None)?;
    for s in &nested {
        println!("n = {:>2}: first point {}", s.len(), s.points[0]);
    }
    Ok(())
}
