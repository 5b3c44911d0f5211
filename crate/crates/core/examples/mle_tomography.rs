//! Sixteen-projector tomography of a Werner state: simulated counts,
//! maximum-likelihood reconstruction, and the count and report files.
//!
//! cargo run --release --example mle_tomography [-- P N_SCALE OUT_DIR]

use std::path::PathBuf;

use tomofid::dv::{closest_werner, min_ppt_eigenvalue, uhlmann_fidelity, werner};
use tomofid::io::{self, FitReport};
use tomofid::mle::{mle_fit, simulate_counts, standard_projector_set, NoiseModel};
use tomofid::rng;

fn main() -> tomofid::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map_or(0.44, |a| a.parse().expect("p"));
    let n_scale: f64 = args.next().map_or(1500.0, |a| a.parse().expect("n_scale"));
    let out = PathBuf::from(args.next().unwrap_or_else(|| "target/mle_tomography".into()));

    let ps = standard_projector_set();
    let truth = werner(p)?;
    println!("projector set {} (Gram condition {:.1})", ps.id(), ps.gram_condition());

    for noise in [NoiseModel::None, NoiseModel::Poisson] {
        let counts = simulate_counts(&truth, &ps, n_scale, noise, &mut rng::master(7))?;
        let (rho, diag) = mle_fit(&counts, &ps, None)?;
        let (p_star, f_star) = closest_werner(&rho)?;
        println!(
            "{noise:?}: L = {:.3e}, F(truth) = {:.6}, e_m = {:+.4}, closest Werner p = {p_star:.4} (F = {f_star:.4}), {} iterations",
            diag.likelihood,
            uhlmann_fidelity(&rho, &truth)?,
            min_ppt_eigenvalue(&rho),
            diag.iterations
        );
        if noise == NoiseModel::Poisson {
            io::write_counts(&out.join("counts.csv"), &counts, None)?;
            io::write_json(
                &out.join("fit.json"),
                &FitReport::new(&rho, diag, ps.labels().to_vec(), None),
            )?;
            let back = io::read_counts(&out.join("counts.csv"))?;
            assert_eq!(back, counts);
            println!("wrote {}", out.display());
        }
    }
    Ok(())
}
