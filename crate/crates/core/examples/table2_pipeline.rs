//! Monte Carlo analysis of four Werner-state tomographies: direct ensemble
//! statistics against the closest-Werner projection.
//!
//! cargo run --release --example table2_pipeline [-- N_MC]

use tomofid::experiments::{dv_target, RunConfig};

fn main() -> tomofid::Result<()> {
    let n_mc: usize = std::env::args().nth(1).map_or(200, |a| a.parse().expect("n_mc"));
    let config = RunConfig {
        n_mc,
        ..RunConfig::default()
    };
    println!(
        "state  p      p*     F(avg, w)           e_m avg        e_m proj       D avg         D proj        entangled"
    );
    for row in &tomofid::data::WERNER_TABLE {
        let (r, _) = dv_target(&config, row.state, row.p.value)?;
        println!(
            "{:>5}  {:.2}   {:.3}  {:.3} +{:.3} -{:.3}  {:+.3}±{:.3}   {:+.3}±{:.3}   {:.3}±{:.3}   {:.3}±{:.3}   {:.2}",
            r.state,
            r.p_target,
            r.p_star,
            r.fidelity,
            r.fidelity_err.0,
            r.fidelity_err.1,
            r.direct.e_min.mean,
            r.direct.e_min.std,
            r.projected_e_min.mean,
            r.projected_e_min.std,
            r.direct.discord.mean,
            r.direct.discord.std,
            r.projected_discord.mean,
            r.projected_discord.std,
            r.direct.entangled_fraction,
        );
    }
    Ok(())
}
