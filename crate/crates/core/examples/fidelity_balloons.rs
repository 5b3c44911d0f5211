//! Regions of (s, mu) whose states exceed a fidelity threshold to a target,
//! and how much of each region is classical.
//!
//! cargo run --release --example fidelity_balloons

use tomofid::cv::{cm_from_params, gaussian_fidelity};
use tomofid::data::{sts_row, BALLOON_TARGET, STS_TABLE};
use tomofid::resample::{fidelity_balloon, BalloonSpec, GridSpec};

fn main() -> tomofid::Result<()> {
    let grid = GridSpec::default();

    println!("narrow balloons (F > 0.995) with energy stripes");
    for k in [7, 9, 13] {
        let row = sts_row(k).expect("tabulated state");
        let spec = BalloonSpec {
            target: row.params(),
            f_threshold: 0.995,
            energy_window: Some((row.n_tot.value, row.n_tot.err)),
        };
        let map = fidelity_balloon(spec, grid)?;
        println!(
            "  state {k:>2}: {} points inside, {} also in the stripe, classical fraction {:.2}",
            map.n_in_balloon, map.n_in_balloon_and_stripe, map.classical_fraction
        );
    }

    println!(
        "wide balloons around s = {}, mu = {}",
        BALLOON_TARGET.s, BALLOON_TARGET.mu
    );
    for t in [0.90, 0.95] {
        let map = fidelity_balloon(
            BalloonSpec {
                target: BALLOON_TARGET,
                f_threshold: t,
                energy_window: None,
            },
            grid,
        )?;
        println!(
            "  F > {t}: {} points, classical fraction {:.2}",
            map.n_in_balloon, map.classical_fraction
        );
    }
    let target = cm_from_params(BALLOON_TARGET)?;
    for row in &STS_TABLE {
        let f = gaussian_fidelity(cm_from_params(row.params())?, target)?;
        println!("  state {:>2}: F = {f:.4}", row.state);
    }
    Ok(())
}
