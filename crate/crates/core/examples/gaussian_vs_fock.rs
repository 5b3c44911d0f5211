//! Closed-form Gaussian fidelity against the Uhlmann fidelity of truncated
//! Fock-basis density matrices.
//!
//! cargo run --release --example gaussian_vs_fock

use tomofid::cv::{cm_from_params, fock, gaussian_fidelity, trace_distance_bounds, StsParams};

fn main() -> tomofid::Result<()> {
    let target = StsParams { s: 0.41, mu: 0.53 };
    println!("     s    mu   closed form   Fock basis    |diff|     trace distance (bounds)");
    for s in [0.35, 0.6, 1.0] {
        for mu in [0.4, 0.7, 0.95] {
            let p = StsParams { s, mu };
            let f = gaussian_fidelity(cm_from_params(p)?, cm_from_params(target)?)?;
            let ff = fock::fock_fidelity(p, target)?;
            let d = fock::fock_trace_distance(p, target)?;
            let (lo, hi) = trace_distance_bounds(f)?;
            println!(
                "  {s:.2}  {mu:.2}   {f:.8}    {ff:.8}    {:.1e}    {d:.4} ({lo:.4}, {hi:.4})",
                (f - ff).abs()
            );
        }
    }
    Ok(())
}
