//! Full classification report for λ ↦ 1/λ on the Fock space.

use pseudomult::classify::{classify, ClassifyConfig};
use pseudomult::kernelzoo::*;
use pseudomult::report::{to_json_text, Envelope, Tolerances};
use pseudomult::spectral::DEFAULT_REL_TOL;

fn main() -> pseudomult::error::Result<()> {
    let kernel = Kernel::from_id("fock")?;
    let phi = CandidateFunction::from_id("inv_z")?;
    let sampler = Sampler::new(Scheme::Ladder {
        base: Box::new(Scheme::RadialGrid { rings: Some(1), max_r: Some(1.5) }),
        base_size: 10,
        focus: None,
        r0: 0.5,
        ratio: 0.5,
        per_level: 2,
        angles: Vec::new(),
    });
    let cfg = ClassifyConfig::new(sampler, vec![12, 14]);
    let report = classify(&kernel, &phi, &cfg)?;

    println!("min_m: {:?}", report.min_m_estimate);
    for (m, e) in &report.sm_by_m {
        println!("  s_{m} <= {:.8}", e.upper);
    }
    if let Some(fit) = &report.pole_fit {
        println!("pole fit: α = {} (residual {})", fit.alpha, fit.residual);
    }

    let env = Envelope::new(&kernel.id(), phi.id(), None, Tolerances::new(DEFAULT_REL_TOL, &cfg.bisect));
    let doc = env.wrap("classification", &report)?;
    let text = to_json_text(&doc)?;
    println!("\nreport: {} bytes of JSON, {} warnings", text.len(), doc["warnings"].as_array().map_or(0, |w| w.len()));
    Ok(())
}
