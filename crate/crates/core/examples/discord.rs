//! Quantum discord: closed form for Werner states against the numerical
//! minimization over projective measurements.
//!
//! cargo run --release --example discord

use tomofid::dv::{discord_analytic_werner, discord_numeric, werner, Subsystem};

fn main() -> tomofid::Result<()> {
    println!("     p    closed form  numeric     I(A:B)    J       angles");
    for p in [0.1, 0.28, 0.44, 0.7, 1.0] {
        let exact = discord_analytic_werner(p)?;
        let d = discord_numeric(&werner(p)?, Subsystem::A)?;
        println!(
            "  {p:.2}   {exact:.6}     {:.6}    {:.4}    {:.4}  ({:.3}, {:.3})",
            d.value, d.mutual_info, d.classical_corr, d.optimal_angles.0, d.optimal_angles.1
        );
    }
    let d = discord_numeric(&werner(-0.2)?, Subsystem::B)?;
    println!("  p = -0.20 (numeric only): {:.6}", d.value);
    Ok(())
}
