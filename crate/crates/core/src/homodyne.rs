//! Homodyne data simulation and pattern-function tomography of single-mode
//! squeezed thermal states.
//!
//! Moments are estimated as sample means of kernel functions `R[O](x, θ)`
//! over the recorded `(θ_k, x_k)` pairs, with the central-limit standard error
//! `sqrt((mean(R²) − mean(R)²) / M)`.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::cv::{
    params_from_cm, squeezing_db, squeezing_factor_from_photons, variances_from_energy, CovarianceMatrix2, StsParams,
};
use crate::error::{Error, Result};

/// Phase acquisitions whose `e^{2iθ}` resultant exceeds this are rejected as
/// not covering a half-period.
pub const COVERAGE_MAX_RESULTANT: f64 = 0.5;

/// Number of standard errors used by the STS-form compatibility test.
pub const COMPATIBILITY_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PhaseSchedule {
    /// `θ_k = 2πk/M`, a piezo-scanned local oscillator.
    #[default]
    LinearRamp,
    /// `θ_k` uniform on `[0, 2π)`.
    UniformRandom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomodyneSample {
    pub theta: f64,
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct DatasetMeta {
    pub seed: Option<u64>,
    pub params: Option<StsParams>,
    pub schedule: PhaseSchedule,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomodyneDataset {
    pub samples: Vec<HomodyneSample>,
    pub meta: DatasetMeta,
}

impl HomodyneDataset {
    pub fn new(samples: Vec<HomodyneSample>, meta: DatasetMeta) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "a homodyne dataset needs at least 2 samples, got {}",
                samples.len()
            )));
        }
        Ok(HomodyneDataset { samples, meta })
    }

    pub fn m(&self) -> usize {
        self.samples.len()
    }

    /// Maps every phase into `[0, π)`, flipping the sign of outcomes taken at
    /// `θ ≥ π` (since `x_{θ+π} = −x_θ`).
    pub fn folded(&self) -> HomodyneDataset {
        let samples = self
            .samples
            .iter()
            .map(|s| {
                let t = s.theta.rem_euclid(2.0 * PI);
                if t >= PI {
                    HomodyneSample { theta: t - PI, x: -s.x }
                } else {
                    HomodyneSample { theta: t, x: s.x }
                }
            })
            .collect();
        HomodyneDataset {
            samples,
            meta: self.meta.clone(),
        }
    }

    /// Sample variance of `x` in `bins` equal phase bins over `[0, 2π)`.
    pub fn binned_variances(&self, bins: usize) -> Vec<PhaseBin> {
        let mut acc = vec![MomentAccumulator::default(); bins];
        for s in &self.samples {
            let t = s.theta.rem_euclid(2.0 * PI);
            let b = ((t / (2.0 * PI)) * bins as f64) as usize;
            acc[b.min(bins - 1)].push(s.x);
        }
        acc.iter()
            .enumerate()
            .map(|(b, a)| PhaseBin {
                theta: (b as f64 + 0.5) * 2.0 * PI / bins as f64,
                count: a.n,
                variance: if a.n > 1 {
                    (a.sum_sq - a.sum * a.sum / a.n as f64) / (a.n - 1) as f64
                } else {
                    f64::NAN
                },
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseBin {
    pub theta: f64,
    pub count: usize,
    pub variance: f64,
}

/// Draws `m` homodyne outcomes from a STS: `x_k ~ N(0, <Δx²_{θ_k}>)`.
pub fn simulate_homodyne<R: Rng + ?Sized>(
    p: StsParams,
    m: usize,
    schedule: PhaseSchedule,
    rng: &mut R,
) -> Result<HomodyneDataset> {
    p.validate()?;
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 homodyne samples, got {m}"
        )));
    }
    let samples = (0..m)
        .map(|k| {
            let theta = match schedule {
                PhaseSchedule::LinearRamp => 2.0 * PI * k as f64 / m as f64,
                PhaseSchedule::UniformRandom => rng.random::<f64>() * 2.0 * PI,
            };
            let z: f64 = StandardNormal.sample(rng);
            HomodyneSample {
                theta,
                x: z * p.quadrature_variance(theta).sqrt(),
            }
        })
        .collect();
    HomodyneDataset::new(
        samples,
        DatasetMeta {
            seed: None,
            params: Some(p),
            schedule,
        },
    )
}

/// `R[x_φ](x, θ) = 2x cos(θ − φ)`
pub fn estimator_quadrature(x: f64, theta: f64, phi: f64) -> f64 {
    2.0 * x * (theta - phi).cos()
}

/// `R[x_φ²](x, θ) = (x² − 1)(1 + 2cos 2(θ − φ)) + 1`
pub fn estimator_quadrature_sq(x: f64, theta: f64, phi: f64) -> f64 {
    (x * x - 1.0) * (1.0 + 2.0 * (2.0 * (theta - phi)).cos()) + 1.0
}

/// `R[a†a](x, θ) = (x² − 1)/2`
pub fn estimator_photon_number(x: f64) -> f64 {
    0.5 * (x * x - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    XPhi,
    XPhiSq,
    PhotonNumber,
}

impl Observable {
    pub fn kernel(self, x: f64, theta: f64, phi: f64) -> f64 {
        match self {
            Observable::XPhi => estimator_quadrature(x, theta, phi),
            Observable::XPhiSq => estimator_quadrature_sq(x, theta, phi),
            Observable::PhotonNumber => estimator_photon_number(x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructedMoment {
    pub value: f64,
    pub sigma: f64,
}

impl ReconstructedMoment {
    /// `|value − expected| ≤ k σ`
    pub fn within(&self, expected: f64, k: f64) -> bool {
        (self.value - expected).abs() <= k * self.sigma
    }
}

/// Single-pass accumulator of `Σf` and `Σf²`; `merge` is associative so
/// partial sums can be combined in any grouping.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MomentAccumulator {
    pub n: usize,
    pub sum: f64,
    pub sum_sq: f64,
}

impl MomentAccumulator {
    pub fn push(&mut self, f: f64) {
        self.n += 1;
        self.sum += f;
        self.sum_sq += f * f;
    }

    pub fn merge(self, other: Self) -> Self {
        MomentAccumulator {
            n: self.n + other.n,
            sum: self.sum + other.sum,
            sum_sq: self.sum_sq + other.sum_sq,
        }
    }

    pub fn finish(&self) -> ReconstructedMoment {
        let m = self.n as f64;
        let value = self.sum / m;
        let spread = (self.sum_sq / m - value * value).max(0.0);
        ReconstructedMoment {
            value,
            sigma: (spread / m).sqrt(),
        }
    }
}

fn check_coverage(ds: &HomodyneDataset) -> Result<()> {
    let (mut re, mut im) = (0.0, 0.0);
    for s in &ds.samples {
        re += (2.0 * s.theta).cos();
        im += (2.0 * s.theta).sin();
    }
    let resultant = re.hypot(im) / ds.m() as f64;
    if resultant > COVERAGE_MAX_RESULTANT {
        return Err(Error::Coverage(format!(
            "phases do not cover a half-period (|<e^{{2iθ}}>| = {resultant:.3})"
        )));
    }
    Ok(())
}

/// Sample mean and standard error of an arbitrary kernel over the dataset.
pub fn estimate(ds: &HomodyneDataset, kernel: impl Fn(f64, f64) -> f64) -> Result<ReconstructedMoment> {
    check_coverage(ds)?;
    let mut acc = MomentAccumulator::default();
    for s in &ds.samples {
        acc.push(kernel(s.x, s.theta));
    }
    Ok(acc.finish())
}

pub fn reconstruct(ds: &HomodyneDataset, which: Observable, phi: f64) -> Result<ReconstructedMoment> {
    estimate(ds, |x, theta| which.kernel(x, theta, phi))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StsCompatibility {
    pub null_first_moments: bool,
    pub diagonal: bool,
}

impl StsCompatibility {
    pub fn passed(&self) -> bool {
        self.null_first_moments && self.diagonal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmReconstruction {
    /// Diagonal covariance matrix `diag(<Δx²>, <Δp²>)`.
    pub cm: CovarianceMatrix2,
    pub var_x: ReconstructedMoment,
    pub var_p: ReconstructedMoment,
    /// `<x>` and `<p>`.
    pub first_moments: [ReconstructedMoment; 2],
    /// Symmetrized `x`–`p` covariance, estimated from the `π/4` and `3π/4`
    /// quadratures; used only for the compatibility test.
    pub cross_term: ReconstructedMoment,
    pub n_tot: ReconstructedMoment,
    pub compatibility: StsCompatibility,
}

impl CmReconstruction {
    pub fn params(&self) -> Result<StsParams> {
        params_from_cm(self.cm)
    }
}

fn variance_at(ds: &HomodyneDataset, phi: f64) -> Result<(ReconstructedMoment, ReconstructedMoment)> {
    let first = reconstruct(ds, Observable::XPhi, phi)?;
    let second = reconstruct(ds, Observable::XPhiSq, phi)?;
    let value = second.value - first.value * first.value;
    // Error of <x²> and of <x>² (= 2|<x>| δ<x>) added in quadrature.
    let sigma = second.sigma.hypot(2.0 * first.value.abs() * first.sigma);
    Ok((ReconstructedMoment { value, sigma }, first))
}

/// First moments, diagonal covariance matrix and total energy, plus a test of
/// the STS form (null first moments, vanishing `x`–`p` covariance).
pub fn reconstruct_cm(ds: &HomodyneDataset) -> Result<CmReconstruction> {
    let (var_x, mean_x) = variance_at(ds, 0.0)?;
    let (var_p, mean_p) = variance_at(ds, PI / 2.0)?;
    let n_tot = reconstruct(ds, Observable::PhotonNumber, 0.0)?;
    // Var(x_{π/4}) − Var(x_{3π/4}) = 2 cov(x, p); the kernel difference
    // collapses to 2(x² − 1) sin 2θ.
    let cross_raw = estimate(ds, |x, theta| 2.0 * (x * x - 1.0) * (2.0 * theta).sin())?;
    let cross_term = ReconstructedMoment {
        value: cross_raw.value - mean_x.value * mean_p.value,
        sigma: cross_raw.sigma,
    };
    let k = COMPATIBILITY_SIGMAS;
    let compatibility = StsCompatibility {
        null_first_moments: mean_x.within(0.0, k) && mean_p.within(0.0, k),
        diagonal: cross_term.within(0.0, k),
    };
    Ok(CmReconstruction {
        cm: CovarianceMatrix2::diag(var_x.value, var_p.value),
        var_x,
        var_p,
        first_moments: [mean_x, mean_p],
        cross_term,
        n_tot,
        compatibility,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VariancePoint {
    pub n_tot: f64,
    pub vxx: f64,
    pub vxx_err: f64,
    pub vpp: f64,
    pub vpp_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceFitResult {
    pub n_s: f64,
    /// Standard error of `n_s` from the curvature of the weighted fit.
    pub n_s_err: f64,
    /// `(vxx − model, vpp − model)` for each point.
    pub residuals: Vec<(f64, f64)>,
    pub chi2: f64,
    pub db: f64,
    pub iterations: usize,
}

/// Model variances and their derivatives in `n_s`.
fn variance_model(n_tot: f64, n_s: f64) -> ((f64, f64), (f64, f64)) {
    let thermal = 1.0 + 2.0 * (n_tot - n_s) / (2.0 * n_s + 1.0);
    let d_thermal = -2.0 * (1.0 + 2.0 * n_tot) / (2.0 * n_s + 1.0).powi(2);
    let g = squeezing_factor_from_photons(n_s);
    let d_g = 2.0 - (1.0 + 2.0 * n_s) / (n_s + n_s * n_s).sqrt();
    (
        (thermal * g, thermal / g),
        (d_thermal * g + thermal * d_g, d_thermal / g - thermal * d_g / (g * g)),
    )
}

fn fit_chi2(points: &[VariancePoint], n_s: f64) -> f64 {
    points
        .iter()
        .map(|p| {
            let ((mx, mp), _) = variance_model(p.n_tot, n_s);
            ((p.vxx - mx) / p.vxx_err).powi(2) + ((p.vpp - mp) / p.vpp_err).powi(2)
        })
        .sum()
}

/// Weighted least-squares fit of both variance branches, linear in `N_tot`,
/// sharing the single parameter `n_s`.
pub fn fit_squeezed_photons(points: &[VariancePoint]) -> Result<VarianceFitResult> {
    if points.len() < 2 {
        return Err(Error::Fit(format!("need at least 2 points, got {}", points.len())));
    }
    if points
        .iter()
        .any(|p| !(p.vxx_err > 0.0 && p.vpp_err > 0.0 && p.n_tot >= 0.0))
    {
        return Err(Error::Fit("uncertainties must be positive".into()));
    }
    let upper = points.iter().map(|p| p.n_tot).fold(0.0, f64::max).max(1e-3);

    // Coarse scan, then Gauss-Newton polish from the best cell.
    let steps = 2000;
    let mut n_s = (0..=steps)
        .map(|i| upper * i as f64 / steps as f64)
        .min_by(|a, b| fit_chi2(points, *a).total_cmp(&fit_chi2(points, *b)))
        .unwrap_or(0.0)
        .max(1e-9);

    let mut iterations = 0;
    let mut converged = false;
    let mut info = 0.0;
    while iterations < 200 {
        iterations += 1;
        let (mut jr, mut jj) = (0.0, 0.0);
        for p in points {
            let ((mx, mp), (dx, dp)) = variance_model(p.n_tot, n_s);
            let (wx, wp) = (p.vxx_err.powi(-2), p.vpp_err.powi(-2));
            jr += wx * dx * (p.vxx - mx) + wp * dp * (p.vpp - mp);
            jj += wx * dx * dx + wp * dp * dp;
        }
        info = jj;
        if !(jj > 0.0) {
            break;
        }
        let step = jr / jj;
        let next = (n_s + step).clamp(1e-12, upper);
        let moved = (next - n_s).abs();
        n_s = next;
        if moved < 1e-15 * n_s.max(1.0) {
            converged = true;
            break;
        }
    }
    if !converged || !n_s.is_finite() {
        return Err(Error::Fit(format!(
            "Gauss-Newton polish did not converge (n_s = {n_s}, {iterations} iterations)"
        )));
    }

    let residuals = points
        .iter()
        .map(|p| {
            let ((mx, mp), _) = variance_model(p.n_tot, n_s);
            (p.vxx - mx, p.vpp - mp)
        })
        .collect();
    Ok(VarianceFitResult {
        n_s,
        n_s_err: info.sqrt().recip(),
        residuals,
        chi2: fit_chi2(points, n_s),
        db: squeezing_db(squeezing_factor_from_photons(n_s))?,
        iterations,
    })
}

/// Noiseless variance points generated from the energy parametrization.
pub fn synthetic_variance_points(n_s: f64, n_tots: &[f64]) -> Result<Vec<VariancePoint>> {
    n_tots
        .iter()
        .map(|&n| {
            let (vxx, vpp) = variances_from_energy(n, n_s)?;
            Ok(VariancePoint {
                n_tot: n,
                vxx,
                vxx_err: 0.05,
                vpp,
                vpp_err: 0.1,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::STS_TABLE;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn rng(seed: u64) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(seed)
    }

    #[test]
    fn estimator_examples() {
        assert_eq!(estimator_quadrature(1.0, 0.3, 0.3), 2.0);
        assert!(estimator_quadrature(1.0, PI / 2.0, 0.0).abs() < 1e-15);
        assert!((estimator_quadrature(0.5, PI / 3.0, 0.0) - 0.5).abs() < 1e-15);

        assert_eq!(estimator_quadrature_sq(1.0, 0.7, 0.1), 1.0);
        assert!((estimator_quadrature_sq(0.0, 0.2, 0.2) + 2.0).abs() < 1e-15);
        assert!((estimator_quadrature_sq(2.0, PI / 2.0, 0.0) + 2.0).abs() < 1e-14);

        assert_eq!(estimator_photon_number(1.0), 0.0);
        assert_eq!(estimator_photon_number(0.0), -0.5);
        assert_eq!(estimator_photon_number(3.0), 4.0);
    }

    #[test]
    fn vacuum_isotropy() {
        let ds = simulate_homodyne(StsParams::vacuum(), 100_000, PhaseSchedule::LinearRamp, &mut rng(1)).unwrap();
        let n = ds.m() as f64;
        let var = ds.samples.iter().map(|s| s.x * s.x).sum::<f64>() / n;
        // Var of x² for a unit normal is 2.
        assert!((var - 1.0).abs() < 3.0 * (2.0 / n).sqrt(), "var {var}");
        let nbar = reconstruct(&ds, Observable::PhotonNumber, 0.0).unwrap();
        assert!(nbar.within(0.0, 3.0), "{nbar:?}");
    }

    #[test]
    fn state7_binned_variances() {
        let p = state(7);
        let ds = simulate_homodyne(p, 7000, PhaseSchedule::LinearRamp, &mut rng(2)).unwrap();
        let bins = ds.binned_variances(20);
        let near = |theta: f64| {
            bins.iter()
                .min_by(|a, b| (a.theta - theta).abs().total_cmp(&(b.theta - theta).abs()))
                .unwrap()
                .variance
        };
        // 350 samples per bin; relative error of a variance is √(2/350) ≈ 8%.
        assert!((near(0.0) - p.quadrature_variance(0.0)).abs() < 0.3 * 0.774);
        assert!((near(PI / 2.0) - 4.602).abs() < 0.3 * 4.602);
        assert!(bins.iter().all(|b| b.count == 350));
    }

    #[test]
    fn seeded_replay_is_bit_identical() {
        let p = StsParams { s: 0.5, mu: 0.7 };
        let a = simulate_homodyne(p, 500, PhaseSchedule::UniformRandom, &mut rng(3)).unwrap();
        let b = simulate_homodyne(p, 500, PhaseSchedule::UniformRandom, &mut rng(3)).unwrap();
        assert_eq!(a, b);
        assert!(simulate_homodyne(p, 1, PhaseSchedule::LinearRamp, &mut rng(3)).is_err());
    }

    #[test]
    fn state7_reconstruction() {
        let p = state(7);
        let ds = simulate_homodyne(p, 7000, PhaseSchedule::LinearRamp, &mut rng(4)).unwrap();
        let rec = reconstruct_cm(&ds).unwrap();
        assert!(rec.var_x.within(0.774, 3.0), "{:?}", rec.var_x);
        assert!(rec.var_p.within(4.602, 3.0), "{:?}", rec.var_p);
        assert!((rec.var_x.sigma - 0.05).abs() < 0.02);
        assert!((rec.var_p.sigma - 0.13).abs() < 0.04);
        assert!(rec.n_tot.within(0.8439, 3.0));
        assert!((rec.n_tot.sigma - 0.03).abs() < 0.01);
        assert!(rec.first_moments.iter().all(|m| m.within(0.0, 3.0)));
    }

    #[test]
    fn vacuum_cm_is_identity() {
        let ds = simulate_homodyne(StsParams::vacuum(), 20_000, PhaseSchedule::LinearRamp, &mut rng(5)).unwrap();
        let rec = reconstruct_cm(&ds).unwrap();
        assert!(rec.var_x.within(1.0, 3.0) && rec.var_p.within(1.0, 3.0));
        assert!(rec.compatibility.passed());
    }

    #[test]
    fn shifted_outcomes_fail_first_moment_test() {
        let p = state(7);
        let mut ds = simulate_homodyne(p, 7000, PhaseSchedule::LinearRamp, &mut rng(6)).unwrap();
        // Coherent displacement along x: ⟨x_θ⟩ = d cos θ.
        for s in &mut ds.samples {
            s.x += 0.5 * s.theta.cos();
        }
        let rec = reconstruct_cm(&ds).unwrap();
        assert!(!rec.compatibility.null_first_moments);
    }

    #[test]
    fn constant_phase_is_rejected() {
        let samples = (0..100)
            .map(|k| HomodyneSample {
                theta: 0.4,
                x: k as f64 * 0.01,
            })
            .collect();
        let ds = HomodyneDataset::new(samples, DatasetMeta::default()).unwrap();
        assert!(matches!(
            reconstruct(&ds, Observable::XPhi, 0.0),
            Err(Error::Coverage(_))
        ));
    }

    #[test]
    fn folding_is_exact() {
        let p = StsParams { s: 0.45, mu: 0.6 };
        let ds = simulate_homodyne(p, 3001, PhaseSchedule::UniformRandom, &mut rng(7)).unwrap();
        let folded = ds.folded();
        assert!(folded.samples.iter().all(|s| (0.0..PI).contains(&s.theta)));
        for obs in [Observable::XPhi, Observable::XPhiSq, Observable::PhotonNumber] {
            for phi in [0.0, 0.6, PI / 2.0] {
                let a = reconstruct(&ds, obs, phi).unwrap();
                let b = reconstruct(&folded, obs, phi).unwrap();
                assert!((a.value - b.value).abs() < 1e-12);
                assert!((a.sigma - b.sigma).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn accumulator_merge_is_associative() {
        let xs: Vec<f64> = (0..100).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut whole = MomentAccumulator::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = MomentAccumulator::default();
        let mut b = MomentAccumulator::default();
        xs[..40].iter().for_each(|&x| a.push(x));
        xs[40..].iter().for_each(|&x| b.push(x));
        let merged = a.merge(b).finish();
        assert!((merged.value - whole.finish().value).abs() < 1e-15);
        assert_eq!(a.merge(b).n, 100);
    }

    #[test]
    fn noiseless_fit_recovers_n_s() {
        let pts = synthetic_variance_points(0.2122, &[0.3, 0.5, 0.8, 1.1, 1.4]).unwrap();
        let fit = fit_squeezed_photons(&pts).unwrap();
        assert!((fit.n_s - 0.2122).abs() < 1e-8, "n_s = {}", fit.n_s);
        assert!(fit.chi2 < 1e-16);
    }

    #[test]
    fn table_fit_near_point_two() {
        let pts: Vec<_> = STS_TABLE
            .iter()
            .map(|r| VariancePoint {
                n_tot: r.n_tot.value,
                vxx: r.vxx.value,
                vxx_err: r.vxx.err,
                vpp: r.vpp.value,
                vpp_err: r.vpp.err,
            })
            .collect();
        let fit = fit_squeezed_photons(&pts).unwrap();
        assert!((fit.n_s - 0.2).abs() < 0.01, "n_s = {}", fit.n_s);
        assert_eq!(fit.residuals.len(), 14);
    }

    #[test]
    fn db_of_fitted_two_tenths() {
        let db = squeezing_db(squeezing_factor_from_photons(0.2)).unwrap();
        assert!((db - 3.77).abs() < 5e-3);
    }

    #[test]
    fn fit_needs_two_points() {
        let pts = synthetic_variance_points(0.2, &[0.5]).unwrap();
        assert!(matches!(fit_squeezed_photons(&pts), Err(Error::Fit(_))));
    }

    fn state(n: usize) -> StsParams {
        crate::data::sts_row(n).unwrap().params()
    }
}
