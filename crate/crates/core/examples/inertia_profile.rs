//! Negative squares of the Pick matrix as t grows.

use pseudomult::kernelzoo::*;
use pseudomult::pick::{inertia_profile, pick_matrix};
use pseudomult::spectral::DEFAULT_REL_TOL;

fn main() -> pseudomult::error::Result<()> {
    let kernel = Kernel::from_id("l2")?;
    let phi = CandidateFunction::from_id("harmonic")?;
    let sample = SampleSet::from_reals(&[1.0, 2.0, 3.0, 4.0])?;
    let ts = [0.1, 0.2, 0.3, 0.4, 0.6, 1.1];
    let profile = inertia_profile(&kernel, &phi, &sample, &ts, DEFAULT_REL_TOL)?;
    println!("{} / {} on {{1, 2, 3, 4}}", kernel.id(), phi.id());
    for (t, i) in profile.t_values.iter().zip(&profile.inertias) {
        println!("  t = {t:<4} {i}");
    }

    let szego = Kernel::from_id("szego")?;
    let inv = CandidateFunction::from_id("inv_z")?;
    let s = SampleSet::from_reals(&[0.3, 0.6])?;
    let m = pick_matrix(&szego, &inv, &s, 1.0)?;
    println!("\nPick matrix of 1/λ at t = 1 on {{0.3, 0.6}}:\n{}", m.matrix());
    Ok(())
}
