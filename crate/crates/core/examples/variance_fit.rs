//! One-parameter fit of both quadrature variances against total energy.
//!
//! cargo run --release --example variance_fit

use tomofid::cv;
use tomofid::experiments::{variance_points, RunConfig, VarianceSource};
use tomofid::homodyne::fit_squeezed_photons;

fn main() -> tomofid::Result<()> {
    for source in [
        VarianceSource::Table,
        VarianceSource::Simulated,
        VarianceSource::Noiseless,
    ] {
        let config = RunConfig {
            variance_source: source,
            ..RunConfig::default()
        };
        let points = variance_points(&config)?;
        let fit = fit_squeezed_photons(&points)?;
        println!(
            "{source:?}: n_s = {:.4} ± {:.4}, s = {:.4}, {:.2} dB, chi2 = {:.2} over {} points",
            fit.n_s,
            fit.n_s_err,
            cv::squeezing_factor_from_photons(fit.n_s),
            fit.db,
            fit.chi2,
            points.len()
        );
    }
    Ok(())
}
