//! Fidelities of separable-state replicas to an entangled Werner target,
//! with a beta-distribution fit.
//!
//! cargo run --release --example fidelity_histogram [-- N_MC]

use tomofid::experiments::{fidelity_histogram_run, RunConfig};

fn main() -> tomofid::Result<()> {
    let n_mc: usize = std::env::args().nth(1).map_or(1000, |a| a.parse().expect("n_mc"));
    let config = RunConfig {
        n_mc,
        ..RunConfig::default()
    };
    let h = fidelity_histogram_run(&config)?;
    let peak = *h.counts.iter().max().unwrap_or(&1);
    for (i, n) in h.counts.iter().enumerate() {
        println!(
            "{:.4}-{:.4} {:>5} {}",
            h.edges[i],
            h.edges[i + 1],
            n,
            "#".repeat(n * 50 / peak)
        );
    }
    println!("mean fidelity {:.4}", h.mean);
    if let Some(b) = h.beta {
        println!(
            "beta fit alpha = {:.3}, beta = {:.3}, mode = {:?}",
            b.alpha, b.beta, b.mode
        );
    }
    Ok(())
}
