//! Bisection for s_m on one sample, then a convergence sweep.

use pseudomult::cli::sweep_csv;
use pseudomult::kernelzoo::*;
use pseudomult::pick::{bisect_sm, sm_convergence, BisectOptions};

fn main() -> pseudomult::error::Result<()> {
    let kernel = Kernel::from_id("szego")?;
    let phi = CandidateFunction::from_id("inv_z")?;
    let sampler = Sampler::new(Scheme::RadialGrid { rings: None, max_r: None });
    let opts = BisectOptions::default();

    let sample = sample_domain(&kernel, &sampler, 40, Some(&phi))?;
    for m in 0..4 {
        let e = bisect_sm(&kernel, &phi, &sample, m, &opts)?;
        println!("s_{m} in [{:.10}, {:.10}]  ({} steps)", e.lower, e.upper, e.iterations);
    }

    let table = sm_convergence(&kernel, &phi, 1, &sampler, &[10, 20, 40, 60], &opts)?;
    println!("\n{}", sweep_csv(&table, None));
    println!("non-decreasing: {}", table.non_decreasing);
    Ok(())
}
