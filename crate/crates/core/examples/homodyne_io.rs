//! Simulated homodyne data written to and read back from the `theta,x`
//! format, then reconstructed.
//!
//! cargo run --release --example homodyne_io [-- OUT.csv]

use std::path::PathBuf;

use tomofid::cv::StsParams;
use tomofid::homodyne::{reconstruct_cm, simulate_homodyne, PhaseSchedule};
use tomofid::{io, rng};

fn main() -> tomofid::Result<()> {
    let path = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "target/homodyne_state7.csv".into()),
    );
    let p = StsParams { s: 0.41, mu: 0.53 };
    let mut ds = simulate_homodyne(p, 7000, PhaseSchedule::LinearRamp, &mut rng::master(11))?;
    ds.meta.seed = Some(11);
    io::write_homodyne(&path, &ds, None)?;

    let back = io::read_homodyne(&path)?;
    assert_eq!(back.samples, ds.samples);
    let rec = reconstruct_cm(&back)?;
    println!("read {} samples from {}", back.m(), path.display());
    println!(
        "<dx2> = {:.3} ± {:.3}  (model {:.3})",
        rec.var_x.value,
        rec.var_x.sigma,
        p.quadrature_variance(0.0)
    );
    println!(
        "<dp2> = {:.3} ± {:.3}  (model {:.3})",
        rec.var_p.value,
        rec.var_p.sigma,
        p.quadrature_variance(std::f64::consts::FRAC_PI_2)
    );
    println!(
        "N_tot = {:.3} ± {:.3}  (model {:.3})",
        rec.n_tot.value,
        rec.n_tot.sigma,
        p.energy().n_tot
    );
    println!("STS form: {:?}", rec.compatibility);
    for b in back.binned_variances(8) {
        println!("  theta {:.2}: var {:.3} ({} samples)", b.theta, b.variance, b.count);
    }
    Ok(())
}
