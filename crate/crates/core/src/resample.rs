//! Monte Carlo replica engine and ensemble statistics.
//!
//! Replica `i` of an ensemble draws from stream `i` of the master seed and
//! results are collected in replica order, so ensembles are identical for a
//! given seed whatever the thread count.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cv::{self, StsParams};
use crate::dv::{self, DensityMatrix4, Subsystem};
use crate::error::{Error, Result};
use crate::homodyne::{self, PhaseSchedule};
use crate::mle::{self, CountRecord, MleOptions, ProjectorSet};
use crate::rng;

/// Largest tolerated fraction of failed DV replicas.
pub const MAX_DV_FAILURE_RATE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicaFailure {
    pub replica: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicaEnsemble<T> {
    pub target_id: String,
    pub seed: u64,
    /// Successful replicas in replica-index order.
    pub replicas: Vec<(usize, T)>,
    pub failures: Vec<ReplicaFailure>,
}

impl<T> ReplicaEnsemble<T> {
    /// Number of requested replicas.
    pub fn n_mc(&self) -> usize {
        self.replicas.len() + self.failures.len()
    }

    pub fn values(&self) -> impl Iterator<Item = &T> {
        self.replicas.iter().map(|(_, v)| v)
    }

    fn collect(target_id: String, seed: u64, results: Vec<Result<T>>) -> Self {
        let mut replicas = Vec::with_capacity(results.len());
        let mut failures = Vec::new();
        for (i, r) in results.into_iter().enumerate() {
            match r {
                Ok(v) => replicas.push((i, v)),
                Err(e) => failures.push(ReplicaFailure {
                    replica: i,
                    reason: e.to_string(),
                }),
            }
        }
        ReplicaEnsemble {
            target_id,
            seed,
            replicas,
            failures,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CvReplica {
    pub params: StsParams,
    pub vxx: f64,
    pub vpp: f64,
    pub n_tot: f64,
    pub nonclassical: bool,
}

/// Simulates `n_mc` homodyne datasets of `m` samples and reconstructs each.
pub fn cv_replicas(target: StsParams, m: usize, n_mc: usize, seed: u64) -> Result<ReplicaEnsemble<CvReplica>> {
    target.validate()?;
    if n_mc == 0 || m < 2 {
        return Err(Error::InvalidParameter(format!(
            "need n_mc ≥ 1 and m ≥ 2, got n_mc = {n_mc}, m = {m}"
        )));
    }
    let results: Vec<Result<CvReplica>> = (0..n_mc)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::child(seed, i as u64);
            let ds = homodyne::simulate_homodyne(target, m, PhaseSchedule::LinearRamp, &mut r)?;
            let rec = homodyne::reconstruct_cm(&ds)?;
            let params = rec.params()?;
            Ok(CvReplica {
                params,
                vxx: rec.var_x.value,
                vpp: rec.var_p.value,
                n_tot: rec.n_tot.value,
                nonclassical: cv::is_nonclassical(params),
            })
        })
        .collect();
    let e = ReplicaEnsemble::collect(format!("sts(s={}, mu={})", target.s, target.mu), seed, results);
    if e.replicas.is_empty() {
        return Err(Error::NonConvergence(format!(
            "all {n_mc} CV replicas failed; first: {}",
            e.failures[0].reason
        )));
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DvResampleOptions {
    /// Multiplier on the `√n_j` resampling width (0 disables noise).
    pub std_scale: f64,
    pub mle: MleOptions,
}

impl Default for DvResampleOptions {
    fn default() -> Self {
        DvResampleOptions {
            std_scale: 1.0,
            mle: MleOptions::default(),
        }
    }
}

/// Redraws every count from `N(n_j, std_scale·√n_j)` truncated at zero.
pub fn resample_counts<R: Rng + ?Sized>(base: &CountRecord, std_scale: f64, rng: &mut R) -> Result<CountRecord> {
    let counts = base
        .counts
        .iter()
        .map(|&n| {
            let sd = std_scale * n.sqrt();
            if sd == 0.0 {
                return Ok(n);
            }
            let d = Normal::new(n, sd).map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(d.sample(rng).max(0.0))
        })
        .collect::<Result<Vec<_>>>()?;
    CountRecord::new(base.labels.clone(), counts, base.meta)
}

/// Resamples `base` `n_mc` times and reconstructs each replica by MLE.
/// Fails if more than 1% of the fits fail.
pub fn dv_replicas(
    base: &CountRecord,
    ps: &ProjectorSet,
    n_mc: usize,
    seed: u64,
    opts: DvResampleOptions,
) -> Result<ReplicaEnsemble<DensityMatrix4>> {
    if n_mc == 0 {
        return Err(Error::InvalidParameter("n_mc must be at least 1".into()));
    }
    if !(opts.std_scale >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "std_scale must be nonnegative, got {}",
            opts.std_scale
        )));
    }
    let results: Vec<Result<DensityMatrix4>> = (0..n_mc)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::child(seed, i as u64);
            let counts = resample_counts(base, opts.std_scale, &mut r)?;
            let fit_opts = MleOptions {
                seed: seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
                ..opts.mle
            };
            Ok(mle::mle_fit_with(&counts, ps, None, fit_opts)?.0)
        })
        .collect();
    let e = ReplicaEnsemble::collect("counts".to_string(), seed, results);
    let rate = e.failures.len() as f64 / n_mc as f64;
    if rate > MAX_DV_FAILURE_RATE || e.replicas.is_empty() {
        return Err(Error::NonConvergence(format!(
            "{} of {n_mc} tomographic fits failed; first: {}",
            e.failures.len(),
            e.failures.first().map(|f| f.reason.as_str()).unwrap_or("")
        )));
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (`n − 1` denominator); zero when `n = 1`.
    pub std: f64,
    pub p2_5: f64,
    pub p16: f64,
    pub p50: f64,
    pub p84: f64,
    pub p97_5: f64,
    pub degenerate: bool,
}

impl Summary {
    /// Standard error of the mean.
    pub fn sem(&self) -> f64 {
        self.std / (self.n as f64).sqrt()
    }
}

/// Percentile `q ∈ [0, 1]` of sorted data with linear interpolation.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = q.clamp(0.0, 1.0) * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn summarize(values: &[f64]) -> Result<Summary> {
    let n = values.len();
    if n == 0 {
        return Err(Error::Degenerate("summary of an empty sample".into()));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(Summary {
        n,
        mean,
        std,
        p2_5: percentile(&sorted, 0.025),
        p16: percentile(&sorted, 0.16),
        p50: percentile(&sorted, 0.5),
        p84: percentile(&sorted, 0.84),
        p97_5: percentile(&sorted, 0.975),
        degenerate: std == 0.0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvEnsembleStats {
    pub n: usize,
    pub failures: usize,
    pub s: Summary,
    pub mu: Summary,
    pub vxx: Summary,
    pub vpp: Summary,
    pub n_tot: Summary,
    pub nonclassical_fraction: f64,
    pub classical_fraction: f64,
}

pub fn classify_cv_ensemble(e: &ReplicaEnsemble<CvReplica>) -> Result<CvEnsembleStats> {
    let col = |f: fn(&CvReplica) -> f64| summarize(&e.values().map(f).collect::<Vec<_>>());
    let n = e.replicas.len();
    let nonclassical = e.values().filter(|r| r.nonclassical).count();
    Ok(CvEnsembleStats {
        n,
        failures: e.failures.len(),
        s: col(|r| r.params.s)?,
        mu: col(|r| r.params.mu)?,
        vxx: col(|r| r.vxx)?,
        vpp: col(|r| r.vpp)?,
        n_tot: col(|r| r.n_tot)?,
        nonclassical_fraction: nonclassical as f64 / n as f64,
        classical_fraction: (n - nonclassical) as f64 / n as f64,
    })
}

/// Derived quantities of one two-qubit replica.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DvReplicaSummary {
    pub e_min: f64,
    pub discord: f64,
    pub fidelity: f64,
    pub werner_p: f64,
    pub werner_fidelity: f64,
}

pub fn summarize_dv_replica(r: &DensityMatrix4, target: &DensityMatrix4) -> Result<DvReplicaSummary> {
    let (werner_p, werner_fidelity) = dv::closest_werner(r)?;
    Ok(DvReplicaSummary {
        e_min: dv::min_ppt_eigenvalue(r),
        discord: dv::discord_numeric(r, Subsystem::A)?.value,
        fidelity: dv::uhlmann_fidelity(r, target)?,
        werner_p,
        werner_fidelity,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DvEnsembleStats {
    pub n: usize,
    pub failures: usize,
    pub e_min: Summary,
    pub discord: Summary,
    pub fidelity: Summary,
    pub werner_p: Summary,
    pub entangled_fraction: f64,
    pub separable_fraction: f64,
}

/// Per-replica quantities (in replica order) and their statistics.
pub fn classify_dv_ensemble(
    e: &ReplicaEnsemble<DensityMatrix4>,
    target: &DensityMatrix4,
) -> Result<(Vec<DvReplicaSummary>, DvEnsembleStats)> {
    let rows = e
        .replicas
        .par_iter()
        .map(|(_, r)| summarize_dv_replica(r, target))
        .collect::<Result<Vec<_>>>()?;
    let col = |f: fn(&DvReplicaSummary) -> f64| summarize(&rows.iter().map(f).collect::<Vec<_>>());
    let n = rows.len();
    let entangled = rows.iter().filter(|r| r.e_min < 0.0).count();
    let stats = DvEnsembleStats {
        n,
        failures: e.failures.len(),
        e_min: col(|r| r.e_min)?,
        discord: col(|r| r.discord)?,
        fidelity: col(|r| r.fidelity)?,
        werner_p: col(|r| r.werner_p)?,
        entangled_fraction: entangled as f64 / n as f64,
        separable_fraction: (n - entangled) as f64 / n as f64,
    };
    Ok((rows, stats))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WernerProjection {
    pub p: f64,
    /// Fidelity between the replica and its projection.
    pub fidelity: f64,
    pub e_min: f64,
    pub discord: f64,
}

/// Maps every replica to its closest Werner state.
pub fn werner_projection_ensemble(e: &ReplicaEnsemble<DensityMatrix4>) -> Result<ReplicaEnsemble<WernerProjection>> {
    let replicas = e
        .replicas
        .par_iter()
        .map(|(i, r)| {
            let (p, fidelity) = dv::closest_werner(r)?;
            let w = dv::werner(p)?;
            let discord = if p >= 0.0 {
                dv::discord_analytic_werner(p)?
            } else {
                dv::discord_numeric(&w, Subsystem::A)?.value
            };
            Ok((
                *i,
                WernerProjection {
                    p,
                    fidelity,
                    e_min: dv::min_ppt_eigenvalue(&w),
                    discord,
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReplicaEnsemble {
        target_id: format!("werner-projection({})", e.target_id),
        seed: e.seed,
        replicas,
        failures: e.failures.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalloonSpec {
    pub target: StsParams,
    pub f_threshold: f64,
    /// `(N_exp, δN)`: keep points with `|N_tot − N_exp| < δN`.
    pub energy_window: Option<(f64, f64)>,
}

impl BalloonSpec {
    pub fn validate(&self) -> Result<()> {
        self.target.validate()?;
        if !(self.f_threshold > 0.0 && self.f_threshold < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "fidelity threshold must lie in (0, 1), got {}",
                self.f_threshold
            )));
        }
        if let Some((n, dn)) = self.energy_window {
            if !(dn > 0.0 && n.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "energy window ({n}, {dn}) needs δN > 0"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub mu_min: f64,
    pub mu_max: f64,
    pub n_s: usize,
    pub n_mu: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            s_min: 0.2,
            s_max: 1.2,
            mu_min: 0.2,
            mu_max: 1.0,
            n_s: 300,
            n_mu: 300,
        }
    }
}

impl GridSpec {
    fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![lo];
        }
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalloonPoint {
    pub s: f64,
    pub mu: f64,
    pub fidelity: f64,
    pub in_balloon: bool,
    pub in_stripe: bool,
    pub nonclassical: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BalloonMap {
    pub spec: BalloonSpec,
    pub grid: GridSpec,
    /// Row-major in `μ`, then `s`.
    pub points: Vec<BalloonPoint>,
    pub n_in_balloon: usize,
    pub n_in_balloon_and_stripe: usize,
    /// Fraction of in-balloon lattice points that are classical.
    pub classical_fraction: f64,
}

impl BalloonMap {
    pub fn inside(&self) -> impl Iterator<Item = &BalloonPoint> {
        self.points.iter().filter(|p| p.in_balloon)
    }
}

/// Fidelity to the target and energy on an `(s, μ)` lattice. Without an
/// energy window every point counts as in the stripe.
pub fn fidelity_balloon(spec: BalloonSpec, grid: GridSpec) -> Result<BalloonMap> {
    spec.validate()?;
    if grid.n_s == 0 || grid.n_mu == 0 {
        return Err(Error::InvalidParameter("empty balloon grid".into()));
    }
    if !(grid.s_min > 0.0
        && grid.s_max >= grid.s_min
        && grid.mu_min > 0.0
        && grid.mu_max <= 1.0
        && grid.mu_max >= grid.mu_min)
    {
        return Err(Error::InvalidParameter(format!(
            "balloon grid must satisfy 0 < s_min ≤ s_max and 0 < μ_min ≤ μ_max ≤ 1: {grid:?}"
        )));
    }
    let target_cm = cv::cm_from_params(spec.target)?;
    let ss = GridSpec::axis(grid.s_min, grid.s_max, grid.n_s);
    let mus = GridSpec::axis(grid.mu_min, grid.mu_max, grid.n_mu);
    let points = mus
        .par_iter()
        .flat_map_iter(|&mu| {
            let ss = &ss;
            ss.iter().map(move |&s| -> Result<BalloonPoint> {
                let p = StsParams { s, mu };
                let fidelity = cv::gaussian_fidelity(cv::cm_from_params(p)?, target_cm)?;
                let in_stripe = match spec.energy_window {
                    Some((n, dn)) => (p.energy().n_tot - n).abs() < dn,
                    None => true,
                };
                Ok(BalloonPoint {
                    s,
                    mu,
                    fidelity,
                    in_balloon: fidelity > spec.f_threshold,
                    in_stripe,
                    nonclassical: cv::is_nonclassical(p),
                })
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inside: Vec<_> = points.iter().filter(|p| p.in_balloon).collect();
    let n_in_balloon = inside.len();
    let classical = inside.iter().filter(|p| !p.nonclassical).count();
    Ok(BalloonMap {
        spec,
        grid,
        n_in_balloon_and_stripe: inside.iter().filter(|p| p.in_stripe).count(),
        classical_fraction: if n_in_balloon == 0 {
            0.0
        } else {
            classical as f64 / n_in_balloon as f64
        },
        n_in_balloon,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaFit {
    pub alpha: f64,
    pub beta: f64,
    /// Support `[lo, hi]` the sample was rescaled from.
    pub lo: f64,
    pub hi: f64,
    pub mean: f64,
    /// `None` when the density has no interior maximum (`α ≤ 1` or `β ≤ 1`).
    pub mode: Option<f64>,
}

/// Method-of-moments beta fit on the sample rescaled to its `[min, max]`.
pub fn beta_fit_moments(values: &[f64]) -> Result<BetaFit> {
    if values.len() < 2 {
        return Err(Error::Degenerate("beta fit needs at least two values".into()));
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        return Err(Error::Degenerate("all values are equal".into()));
    }
    let x: Vec<f64> = values.iter().map(|v| (v - lo) / (hi - lo)).collect();
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0);
    let common = m * (1.0 - m) / var - 1.0;
    if !(common > 0.0 && common.is_finite()) {
        return Err(Error::Fit(format!(
            "moments (mean {m}, variance {var}) admit no beta distribution"
        )));
    }
    let (alpha, beta) = (m * common, (1.0 - m) * common);
    let mode = (alpha > 1.0 && beta > 1.0).then(|| lo + (hi - lo) * (alpha - 1.0) / (alpha + beta - 2.0));
    Ok(BetaFit {
        alpha,
        beta,
        lo,
        hi,
        mean: lo + (hi - lo) * alpha / (alpha + beta),
        mode,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityHistogram {
    pub fidelities: Vec<f64>,
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
    pub mean: f64,
    pub beta: Option<BetaFit>,
    pub fit_skipped: bool,
}

/// Histogram of replica fidelities to `target` over their observed range.
pub fn fidelity_histogram(
    e: &ReplicaEnsemble<DensityMatrix4>,
    target: &DensityMatrix4,
    bins: usize,
) -> Result<FidelityHistogram> {
    if bins < 5 {
        return Err(Error::InvalidParameter(format!("need at least 5 bins, got {bins}")));
    }
    let fidelities = e
        .replicas
        .par_iter()
        .map(|(_, r)| dv::uhlmann_fidelity(r, target))
        .collect::<Result<Vec<_>>>()?;
    if fidelities.is_empty() {
        return Err(Error::Degenerate("empty ensemble".into()));
    }
    let lo = fidelities.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = fidelities.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
    let edges = (0..=bins).map(|k| lo + width * k as f64).collect();
    let mut counts = vec![0; bins];
    for f in &fidelities {
        let k = (((f - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    let beta = beta_fit_moments(&fidelities).ok();
    Ok(FidelityHistogram {
        mean: fidelities.iter().sum::<f64>() / fidelities.len() as f64,
        fit_skipped: beta.is_none(),
        beta,
        edges,
        counts,
        fidelities,
    })
}

/// Bootstrap distribution of the sample mean.
pub fn bootstrap_means(values: &[f64], n_boot: usize, seed: u64) -> Result<Vec<f64>> {
    if values.is_empty() || n_boot == 0 {
        return Err(Error::InvalidParameter("bootstrap needs data and n_boot ≥ 1".into()));
    }
    let n = values.len();
    Ok((0..n_boot)
        .into_par_iter()
        .map(|b| {
            let mut r = rng::child(seed, b as u64);
            (0..n).map(|_| values[r.random_range(0..n)]).sum::<f64>() / n as f64
        })
        .collect())
}

/// Fraction of bootstrap resamples in which the mean of `values` is positive.
pub fn bootstrap_positive_fraction(values: &[f64], n_boot: usize, seed: u64) -> Result<f64> {
    let means = bootstrap_means(values, n_boot, seed)?;
    Ok(means.iter().filter(|m| **m > 0.0).count() as f64 / n_boot as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mle::{simulate_counts, standard_projector_set, NoiseModel};

    #[test]
    fn percentile_interpolates() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(percentile(&v, 0.5), 2.5);
        assert_eq!(percentile(&v, 0.0), 1.0);
        assert_eq!(percentile(&v, 1.0), 4.0);
    }

    #[test]
    fn single_value_summary_is_degenerate() {
        let s = summarize(&[0.3]).unwrap();
        assert!(s.degenerate && s.std == 0.0 && s.p2_5 == 0.3);
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn beta_fit_uniform() {
        let v: Vec<f64> = (0..2001).map(|i| i as f64 / 2000.0).collect();
        let b = beta_fit_moments(&v).unwrap();
        assert!((b.alpha - 1.0).abs() < 0.1 && (b.beta - 1.0).abs() < 0.1);
        assert!(beta_fit_moments(&[0.5, 0.5, 0.5]).is_err());
    }

    #[test]
    fn cv_single_replica() {
        let e = cv_replicas(StsParams { s: 0.41, mu: 0.53 }, 2000, 1, 3).unwrap();
        assert_eq!(e.n_mc(), 1);
        let st = classify_cv_ensemble(&e).unwrap();
        assert!(st.s.degenerate);
        assert!(st.nonclassical_fraction == 0.0 || st.nonclassical_fraction == 1.0);
    }

    #[test]
    fn noiseless_dv_replicas_are_identical() {
        let ps = standard_projector_set();
        let base = simulate_counts(
            &dv::werner(0.44).unwrap(),
            &ps,
            3000.0,
            NoiseModel::Poisson,
            &mut rng::master(1),
        )
        .unwrap();
        let e = dv_replicas(
            &base,
            &ps,
            4,
            9,
            DvResampleOptions {
                std_scale: 0.0,
                ..Default::default()
            },
        )
        .unwrap();
        let first = e.replicas[0].1;
        for (_, r) in &e.replicas {
            assert!(crate::linalg::max_abs_diff(r.matrix(), first.matrix()) < 1e-6);
        }
    }

    #[test]
    fn projection_of_werner_is_identity() {
        let replicas = [0.1, 0.3, 0.5]
            .iter()
            .enumerate()
            .map(|(i, &p)| (i, dv::werner(p).unwrap()))
            .collect();
        let e = ReplicaEnsemble {
            target_id: "w".into(),
            seed: 0,
            replicas,
            failures: vec![],
        };
        let proj = werner_projection_ensemble(&e).unwrap();
        for ((_, w), p) in proj.replicas.iter().zip([0.1, 0.3, 0.5]) {
            assert!((w.p - p).abs() < 1e-6);
            assert!((w.e_min - (1.0 - 3.0 * w.p) / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn balloon_at_threshold_near_one_shrinks_to_target() {
        let spec = BalloonSpec {
            target: StsParams { s: 0.41, mu: 0.53 },
            f_threshold: 0.9999,
            energy_window: None,
        };
        let map = fidelity_balloon(spec, GridSpec::default()).unwrap();
        assert!(map.n_in_balloon > 0);
        for p in map.inside() {
            assert!((p.s - 0.41).abs() < 0.02 && (p.mu - 0.53).abs() < 0.02);
        }
        let empty = GridSpec {
            n_s: 0,
            ..GridSpec::default()
        };
        assert!(fidelity_balloon(spec, empty).is_err());
    }
}
