//! Reproducible runs for each exhibit. Every command is a pure function of
//! its [`RunConfig`]: outputs carry the config hash and seed and are
//! byte-identical on reruns.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cv::{self, StsParams};
use crate::data::{self, STS_TABLE, WERNER_TABLE};
use crate::dv::{self, DensityMatrix4};
use crate::error::{Error, Result};
use crate::homodyne::{self, PhaseSchedule, VariancePoint};
use crate::io::{self, fmt_f64, Provenance};
use crate::mle::{self, CountRecord, MleOptions, NoiseModel};
use crate::resample::{self, BalloonSpec, DvResampleOptions, GridSpec, Summary};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    #[default]
    Table1,
    Fig2,
    Fig3,
    Fig5,
    Table2,
    Fig4,
    Fig6,
    Fig7,
}

impl Experiment {
    pub const ALL: [Experiment; 8] = [
        Experiment::Table1,
        Experiment::Fig2,
        Experiment::Fig3,
        Experiment::Fig5,
        Experiment::Table2,
        Experiment::Fig4,
        Experiment::Fig6,
        Experiment::Fig7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Table1 => "table1",
            Experiment::Fig2 => "fig2",
            Experiment::Fig3 => "fig3",
            Experiment::Fig5 => "fig5",
            Experiment::Table2 => "table2",
            Experiment::Fig4 => "fig4",
            Experiment::Fig6 => "fig6",
            Experiment::Fig7 => "fig7",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown experiment {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum VarianceSource {
    /// Quoted characterization of the 14 states.
    #[default]
    Table,
    /// Points reconstructed from simulated homodyne data.
    Simulated,
    /// Exact points generated from `n_s`.
    Noiseless,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub experiment: Experiment,
    /// Excluded from the config hash.
    #[serde(skip)]
    pub out_dir: PathBuf,
    pub n_mc: usize,
    pub m_samples: usize,
    pub n_scale: f64,
    /// Balloon threshold(s); defaults depend on the exhibit.
    pub threshold: Option<Vec<f64>>,
    /// 1-based state indices into the relevant table.
    pub states: Option<Vec<usize>>,
    /// Custom `(s, μ)` targets replacing the tabulated states.
    pub sts_targets: Option<Vec<StsParams>>,
    pub variance_source: VarianceSource,
    /// Squeezing photons for noiseless variance points.
    pub n_s: f64,
    /// Custom Werner parameters replacing the tabulated targets.
    pub werner_targets: Option<Vec<f64>>,
    pub std_scale: f64,
    pub mle_restarts: usize,
    pub grid: GridSpec,
    pub histogram_base_p: f64,
    pub histogram_target_p: f64,
    pub histogram_bins: usize,
}

/// Expected counts per measurement basis reproducing the tabulated error
/// scale (e_m spread ≈ 0.03, closest-Werner p spread ≈ 0.04–0.05).
pub const DEFAULT_N_SCALE: f64 = 1500.0;

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 2013,
            experiment: Experiment::Table1,
            out_dir: PathBuf::from("out"),
            n_mc: 1000,
            m_samples: 7000,
            n_scale: DEFAULT_N_SCALE,
            threshold: None,
            states: None,
            sts_targets: None,
            variance_source: VarianceSource::Table,
            n_s: data::FITTED_SQUEEZING_PHOTONS,
            werner_targets: None,
            std_scale: 1.0,
            mle_restarts: MleOptions::default().restarts,
            grid: GridSpec::default(),
            histogram_base_p: 0.28,
            histogram_target_p: 0.44,
            histogram_bins: 20,
        }
    }
}

impl RunConfig {
    /// Applies a JSON object on top of this config; unknown keys are errors.
    pub fn merge_json(&self, overrides: &serde_json::Value) -> Result<RunConfig> {
        let obj = overrides
            .as_object()
            .ok_or_else(|| Error::Config("config file must hold a JSON object".into()))?;
        let mut base = serde_json::to_value(self)?;
        let base_obj = base.as_object_mut().expect("config serializes to an object");
        for (k, v) in obj {
            if k == "out" || k == "out_dir" {
                continue;
            }
            base_obj.insert(k.clone(), v.clone());
        }
        let mut merged: RunConfig =
            serde_json::from_value(base).map_err(|e| Error::Config(format!("config file: {e}")))?;
        merged.out_dir = match obj.get("out").or_else(|| obj.get("out_dir")) {
            Some(serde_json::Value::String(s)) => PathBuf::from(s),
            Some(other) => return Err(Error::Config(format!("out must be a string, got {other}"))),
            None => self.out_dir.clone(),
        };
        Ok(merged)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.n_mc == 0 {
            return bad("n_mc must be at least 1".into());
        }
        if self.m_samples < 2 {
            return bad(format!("m_samples must be at least 2, got {}", self.m_samples));
        }
        if !(self.n_scale > 0.0 && self.n_scale.is_finite()) {
            return bad(format!("n_scale must be positive, got {}", self.n_scale));
        }
        if !(self.std_scale >= 0.0) {
            return bad(format!("std_scale must be nonnegative, got {}", self.std_scale));
        }
        if let Some(ts) = &self.threshold {
            if ts.is_empty() || ts.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
                return bad(format!("thresholds must lie in (0, 1): {ts:?}"));
            }
        }
        if let Some(targets) = &self.sts_targets {
            for t in targets {
                t.validate()
                    .map_err(|e| Error::Config(format!("STS target {t:?}: {e}")))?;
            }
        }
        if let Some(ps) = &self.werner_targets {
            for p in ps {
                dv::WernerParam::new(*p).map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        for p in [self.histogram_base_p, self.histogram_target_p] {
            dv::WernerParam::new(p).map_err(|e| Error::Config(e.to_string()))?;
        }
        if self.histogram_bins < 5 {
            return bad(format!(
                "histogram_bins must be at least 5, got {}",
                self.histogram_bins
            ));
        }
        if !(self.n_s > 0.0) {
            return bad(format!("n_s must be positive, got {}", self.n_s));
        }
        Ok(())
    }

    pub fn provenance(&self) -> Result<Provenance> {
        Ok(Provenance {
            config_hash: io::config_hash(self)?,
            seed: self.seed,
        })
    }

    fn out(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    /// STS targets as `(label, params, quoted row)`.
    fn sts_selection(&self, default_states: &[usize]) -> Result<Vec<(usize, StsParams)>> {
        if let Some(targets) = &self.sts_targets {
            let all: Vec<_> = targets.iter().enumerate().map(|(i, p)| (i + 1, *p)).collect();
            return self.pick(all);
        }
        let all = default_states
            .iter()
            .map(|&k| (k, data::sts_row(k).expect("known state").params()))
            .collect();
        match &self.states {
            Some(sel) => sel
                .iter()
                .map(|&k| {
                    data::sts_row(k)
                        .map(|r| (k, r.params()))
                        .ok_or_else(|| Error::Config(format!("no STS state {k} (valid: 1–14)")))
                })
                .collect(),
            None => Ok(all),
        }
    }

    fn pick<T: Copy>(&self, all: Vec<(usize, T)>) -> Result<Vec<(usize, T)>> {
        match &self.states {
            None => Ok(all),
            Some(sel) => sel
                .iter()
                .map(|&k| {
                    all.iter()
                        .find(|(i, _)| *i == k)
                        .copied()
                        .ok_or_else(|| Error::Config(format!("state {k} out of range 1–{}", all.len())))
                })
                .collect(),
        }
    }

    fn werner_selection(&self) -> Result<Vec<(usize, f64)>> {
        let all: Vec<(usize, f64)> = match &self.werner_targets {
            Some(ps) => ps.iter().enumerate().map(|(i, p)| (i + 1, *p)).collect(),
            None => WERNER_TABLE.iter().map(|r| (r.state, r.p.value)).collect(),
        };
        self.pick(all)
    }

    fn mle_options(&self, stream: u64) -> MleOptions {
        MleOptions {
            restarts: self.mle_restarts,
            seed: self.seed ^ stream,
            ..MleOptions::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct Stamped<'a, T: Serialize> {
    config_hash: &'a str,
    seed: u64,
    #[serde(flatten)]
    body: T,
}

fn write_stamped<T: Serialize>(path: &Path, prov: &Provenance, body: T) -> Result<()> {
    io::write_json(
        path,
        &Stamped {
            config_hash: &prov.config_hash,
            seed: prov.seed,
            body,
        },
    )
}

/// Paths written by a command.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RunOutputs {
    pub files: Vec<PathBuf>,
}

impl RunOutputs {
    fn add(&mut self, p: PathBuf) -> &Path {
        self.files.push(p);
        self.files.last().expect("just pushed")
    }
}

/// Dispatches to the command for `config.experiment`.
pub fn run(config: &RunConfig) -> Result<RunOutputs> {
    config.validate()?;
    std::fs::create_dir_all(&config.out_dir)
        .map_err(|e| Error::Config(format!("cannot create {}: {e}", config.out_dir.display())))?;
    match config.experiment {
        Experiment::Table1 => cmd_cv_characterize(config),
        Experiment::Fig2 => cmd_variance_fit(config),
        Experiment::Fig3 | Experiment::Fig5 => cmd_balloon(config),
        Experiment::Table2 | Experiment::Fig4 | Experiment::Fig6 | Experiment::Fig7 => cmd_dv_pipeline(config),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacterizationRow {
    pub state: usize,
    pub target: StsParams,
    pub vxx: Summary1,
    pub vpp: Summary1,
    pub n_tot: Summary1,
    pub s: Summary1,
    pub mu: Summary1,
    pub nonclassical: bool,
    pub sts_compatible: bool,
}

/// Value with a one-sigma error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary1 {
    pub value: f64,
    pub err: f64,
}

/// Simulates and reconstructs one state. Errors on `s` and `μ` propagate the
/// variance errors to first order.
pub fn characterize_state(state: usize, target: StsParams, m: usize, seed: u64) -> Result<CharacterizationRow> {
    let mut r = rng::child(seed, state as u64);
    let ds = homodyne::simulate_homodyne(target, m, PhaseSchedule::LinearRamp, &mut r)?;
    characterize_dataset(state, target, &ds)
}

pub fn characterize_dataset(
    state: usize,
    target: StsParams,
    ds: &homodyne::HomodyneDataset,
) -> Result<CharacterizationRow> {
    let rec = homodyne::reconstruct_cm(ds)?;
    let p = rec.params()?;
    let rel = 0.5 * (rec.var_x.sigma / rec.var_x.value).hypot(rec.var_p.sigma / rec.var_p.value);
    Ok(CharacterizationRow {
        state,
        target,
        vxx: Summary1 {
            value: rec.var_x.value,
            err: rec.var_x.sigma,
        },
        vpp: Summary1 {
            value: rec.var_p.value,
            err: rec.var_p.sigma,
        },
        n_tot: Summary1 {
            value: rec.n_tot.value,
            err: rec.n_tot.sigma,
        },
        s: Summary1 {
            value: p.s,
            err: p.s * rel,
        },
        mu: Summary1 {
            value: p.mu,
            err: p.mu * rel,
        },
        nonclassical: cv::is_nonclassical(p),
        sts_compatible: rec.compatibility.passed(),
    })
}

const TABLE1_COLUMNS: [&str; 15] = [
    "state",
    "s_target",
    "mu_target",
    "vxx",
    "vxx_err",
    "vpp",
    "vpp_err",
    "n_tot",
    "n_tot_err",
    "s",
    "s_err",
    "mu",
    "mu_err",
    "nonclassical",
    "sts_compatible",
];

fn table1_row(r: &CharacterizationRow) -> Vec<String> {
    let mut row = vec![r.state.to_string(), fmt_f64(r.target.s), fmt_f64(r.target.mu)];
    for q in [r.vxx, r.vpp, r.n_tot, r.s, r.mu] {
        row.push(fmt_f64(q.value));
        row.push(fmt_f64(q.err));
    }
    row.push(r.nonclassical.to_string());
    row.push(r.sts_compatible.to_string());
    row
}

/// Table I: simulated homodyne characterization of each state.
pub fn cmd_cv_characterize(config: &RunConfig) -> Result<RunOutputs> {
    let prov = config.provenance()?;
    let all: Vec<usize> = (1..=14).collect();
    let targets = config.sts_selection(&all)?;
    let mut out = RunOutputs::default();
    let mut rows = Vec::new();
    for (k, p) in &targets {
        let mut r = rng::child(config.seed, *k as u64);
        let ds = homodyne::simulate_homodyne(*p, config.m_samples, PhaseSchedule::LinearRamp, &mut r)?;
        let mut ds = ds;
        ds.meta.seed = Some(config.seed);
        io::write_homodyne(
            out.add(config.out(&format!("homodyne/state_{k:02}.csv"))),
            &ds,
            Some(&prov),
        )?;
        out.add(config.out(&format!("homodyne/state_{k:02}.json")));
        rows.push(characterize_dataset(*k, *p, &ds)?);
    }
    io::write_csv(
        out.add(config.out("table1.csv")),
        Some(&prov),
        &TABLE1_COLUMNS,
        rows.iter().map(table1_row),
    )?;
    Ok(out)
}

fn table_variance_points() -> Vec<VariancePoint> {
    STS_TABLE
        .iter()
        .map(|r| VariancePoint {
            n_tot: r.n_tot.value,
            vxx: r.vxx.value,
            vxx_err: r.vxx.err,
            vpp: r.vpp.value,
            vpp_err: r.vpp.err,
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
struct VarianceFitSummary<'a> {
    source: VarianceSource,
    n_points: usize,
    fit: &'a homodyne::VarianceFitResult,
    squeezing_factor: f64,
}

/// Variance points for the Fig. 2 fit according to `config.variance_source`.
pub fn variance_points(config: &RunConfig) -> Result<Vec<VariancePoint>> {
    match config.variance_source {
        VarianceSource::Table => {
            let all: Vec<_> = table_variance_points()
                .into_iter()
                .enumerate()
                .map(|(i, p)| (i + 1, p))
                .collect();
            Ok(config.pick(all)?.into_iter().map(|(_, p)| p).collect())
        }
        VarianceSource::Noiseless => {
            let n: Vec<f64> = STS_TABLE.iter().map(|r| r.n_tot.value).collect();
            homodyne::synthetic_variance_points(config.n_s, &n)
        }
        VarianceSource::Simulated => {
            let all: Vec<usize> = (1..=14).collect();
            config
                .sts_selection(&all)?
                .into_iter()
                .map(|(k, p)| {
                    let row = characterize_state(k, p, config.m_samples, config.seed)?;
                    Ok(VariancePoint {
                        n_tot: row.n_tot.value,
                        vxx: row.vxx.value,
                        vxx_err: row.vxx.err,
                        vpp: row.vpp.value,
                        vpp_err: row.vpp.err,
                    })
                })
                .collect()
        }
    }
}

/// Fig. 2: variances against total energy with the one-parameter fit.
pub fn cmd_variance_fit(config: &RunConfig) -> Result<RunOutputs> {
    let prov = config.provenance()?;
    let points = variance_points(config)?;
    let fit = homodyne::fit_squeezed_photons(&points)?;
    let mut out = RunOutputs::default();
    io::write_csv(
        out.add(config.out("fig2_points.csv")),
        Some(&prov),
        &["n_tot", "vxx", "vxx_err", "vpp", "vpp_err"],
        points.iter().map(|p| {
            [p.n_tot, p.vxx, p.vxx_err, p.vpp, p.vpp_err]
                .into_iter()
                .map(fmt_f64)
                .collect()
        }),
    )?;
    let hi = points.iter().map(|p| p.n_tot).fold(0.0, f64::max) * 1.1;
    let lo = fit.n_s;
    let curve = (0..=100)
        .map(|i| {
            let n = lo + (hi - lo) * i as f64 / 100.0;
            let (vx, vp) = cv::variances_from_energy(n, fit.n_s)?;
            Ok(vec![fmt_f64(n), fmt_f64(vx), fmt_f64(vp)])
        })
        .collect::<Result<Vec<_>>>()?;
    io::write_csv(
        out.add(config.out("fig2_curves.csv")),
        Some(&prov),
        &["n_tot", "vxx_fit", "vpp_fit"],
        curve,
    )?;
    write_stamped(
        out.add(config.out("fig2_fit.json")),
        &prov,
        VarianceFitSummary {
            source: config.variance_source,
            n_points: points.len(),
            fit: &fit,
            squeezing_factor: cv::squeezing_factor_from_photons(fit.n_s),
        },
    )?;
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
struct BalloonSummary {
    label: String,
    target: StsParams,
    threshold: f64,
    energy_window: Option<(f64, f64)>,
    n_points: usize,
    n_in_balloon: usize,
    n_in_balloon_and_stripe: usize,
    classical_fraction: f64,
    straddles_boundary: bool,
}

#[derive(Debug, Clone, Serialize)]
struct StateFidelity {
    state: usize,
    s: f64,
    mu: f64,
    fidelity: f64,
    inside: Vec<bool>,
}

fn balloon_summary(label: String, map: &resample::BalloonMap) -> BalloonSummary {
    BalloonSummary {
        label,
        target: map.spec.target,
        threshold: map.spec.f_threshold,
        energy_window: map.spec.energy_window,
        n_points: map.points.len(),
        n_in_balloon: map.n_in_balloon,
        n_in_balloon_and_stripe: map.n_in_balloon_and_stripe,
        classical_fraction: map.classical_fraction,
        straddles_boundary: map.classical_fraction > 0.0 && map.classical_fraction < 1.0,
    }
}

/// Fig. 3 (narrow balloons with energy stripes around single states) and
/// Fig. 5 (wide balloons around the fixed nonclassical target).
pub fn cmd_balloon(config: &RunConfig) -> Result<RunOutputs> {
    let prov = config.provenance()?;
    let mut out = RunOutputs::default();
    let mut summaries = Vec::new();
    match config.experiment {
        Experiment::Fig3 => {
            let thresholds = config.threshold.clone().unwrap_or_else(|| vec![0.995]);
            for (k, p) in config.sts_selection(&[7, 9, 13])? {
                let window = data::sts_row(k)
                    .filter(|_| config.sts_targets.is_none())
                    .map(|r| (r.n_tot.value, r.n_tot.err));
                for &t in &thresholds {
                    let spec = BalloonSpec {
                        target: p,
                        f_threshold: t,
                        energy_window: window,
                    };
                    let map = resample::fidelity_balloon(spec, config.grid)?;
                    let name = format!("fig3_state{k:02}_F{t}.csv");
                    io::write_balloon(out.add(config.out(&name)), &map, Some(&prov))?;
                    summaries.push(balloon_summary(format!("state {k}"), &map));
                }
            }
            write_stamped(
                out.add(config.out("fig3_summary.json")),
                &prov,
                serde_json::json!({ "balloons": summaries }),
            )?;
        }
        _ => {
            let thresholds = config.threshold.clone().unwrap_or_else(|| vec![0.90, 0.95]);
            let target = data::BALLOON_TARGET;
            let target_cm = cv::cm_from_params(target)?;
            let mut maps = Vec::new();
            for &t in &thresholds {
                let spec = BalloonSpec {
                    target,
                    f_threshold: t,
                    energy_window: None,
                };
                let map = resample::fidelity_balloon(spec, config.grid)?;
                io::write_balloon(out.add(config.out(&format!("fig5_F{t}.csv"))), &map, Some(&prov))?;
                summaries.push(balloon_summary("target".into(), &map));
                maps.push(map);
            }
            let all: Vec<usize> = (1..=14).collect();
            let states = config
                .sts_selection(&all)?
                .into_iter()
                .map(|(k, p)| {
                    let f = cv::gaussian_fidelity(cv::cm_from_params(p)?, target_cm)?;
                    Ok(StateFidelity {
                        state: k,
                        s: p.s,
                        mu: p.mu,
                        fidelity: f,
                        inside: thresholds.iter().map(|t| f > *t).collect(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let all_inside: Vec<bool> = (0..thresholds.len())
                .map(|i| states.iter().all(|s| s.inside[i]))
                .collect();
            write_stamped(
                out.add(config.out("fig5_summary.json")),
                &prov,
                serde_json::json!({
                    "thresholds": thresholds,
                    "balloons": summaries,
                    "states": states,
                    "all_states_inside": all_inside,
                }),
            )?;
        }
    }
    Ok(out)
}

/// Result of the two-qubit pipeline for one target.
#[derive(Debug, Clone, Serialize)]
pub struct DvTargetResult {
    pub state: usize,
    pub p_target: f64,
    pub base_counts: CountRecord,
    /// Closest Werner parameter and fidelity of the replica-average state.
    pub p_star: f64,
    pub fidelity: f64,
    /// Spread `(p84 − p50, p50 − p16)` of replica fidelities to
    /// `werner(p_star)`.
    pub fidelity_err: (f64, f64),
    pub replicas: Vec<resample::DvReplicaSummary>,
    pub projections: Vec<resample::WernerProjection>,
    pub direct: resample::DvEnsembleStats,
    pub projected_e_min: Summary,
    pub projected_discord: Summary,
    pub average_state: io::DensityMatrixJson,
    pub failures: usize,
}

/// Base counts, replicas, and both analysis strategies for one target.
pub fn dv_target(config: &RunConfig, state: usize, p: f64) -> Result<(DvTargetResult, Vec<DensityMatrix4>)> {
    let ps = mle::standard_projector_set();
    let truth = dv::werner(p)?;
    let mut r = rng::child(config.seed, 1000 + state as u64);
    let base = mle::simulate_counts(&truth, &ps, config.n_scale, NoiseModel::Poisson, &mut r)?;
    let opts = DvResampleOptions {
        std_scale: config.std_scale,
        mle: config.mle_options(state as u64),
    };
    let ens = resample::dv_replicas(&base, &ps, config.n_mc, config.seed.wrapping_add(state as u64), opts)?;
    let (rows, direct) = resample::classify_dv_ensemble(&ens, &truth)?;
    let proj = resample::werner_projection_ensemble(&ens)?;
    let projections: Vec<_> = proj.values().copied().collect();
    let avg = DensityMatrix4::mean(ens.values())?;
    let (p_star, fidelity) = dv::closest_werner(&avg)?;
    let w_star = dv::werner(p_star)?;
    let fids = ens
        .values()
        .map(|r| dv::uhlmann_fidelity(r, &w_star))
        .collect::<Result<Vec<_>>>()?;
    let fs = resample::summarize(&fids)?;
    let states: Vec<DensityMatrix4> = ens.values().copied().collect();
    Ok((
        DvTargetResult {
            state,
            p_target: p,
            base_counts: base,
            p_star,
            fidelity,
            fidelity_err: (fs.p84 - fs.p50, fs.p50 - fs.p16),
            projected_e_min: resample::summarize(&projections.iter().map(|w| w.e_min).collect::<Vec<_>>())?,
            projected_discord: resample::summarize(&projections.iter().map(|w| w.discord).collect::<Vec<_>>())?,
            replicas: rows,
            projections,
            direct,
            average_state: (&avg).into(),
            failures: ens.failures.len(),
        },
        states,
    ))
}

const TABLE2_COLUMNS: [&str; 17] = [
    "state",
    "p_target",
    "p_star",
    "p_err",
    "fidelity",
    "fidelity_err_plus",
    "fidelity_err_minus",
    "e_min_avg",
    "e_min_avg_err",
    "e_min_werner",
    "e_min_werner_err",
    "discord_avg",
    "discord_avg_err",
    "discord_werner",
    "discord_werner_err",
    "entangled_fraction",
    "failures",
];

fn table2_row(r: &DvTargetResult) -> Vec<String> {
    let mut row = vec![r.state.to_string()];
    row.extend(
        [
            r.p_target,
            r.p_star,
            r.direct.werner_p.std,
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
        ]
        .map(fmt_f64),
    );
    row.push(r.failures.to_string());
    row
}

/// Table II and Figs. 4, 6, 7: count simulation, Monte Carlo replicas,
/// direct and Werner-projected statistics.
pub fn cmd_dv_pipeline(config: &RunConfig) -> Result<RunOutputs> {
    let prov = config.provenance()?;
    let mut out = RunOutputs::default();
    if config.experiment == Experiment::Fig7 {
        return fig7(config, &prov, out);
    }
    let mut results = Vec::new();
    for (k, p) in config.werner_selection()? {
        let (res, _) = dv_target(config, k, p)?;
        results.push(res);
    }
    match config.experiment {
        Experiment::Table2 => {
            io::write_csv(
                out.add(config.out("table2.csv")),
                Some(&prov),
                &TABLE2_COLUMNS,
                results.iter().map(table2_row),
            )?;
            for r in &results {
                io::write_counts(
                    out.add(config.out(&format!("counts/state{}.csv", r.state))),
                    &r.base_counts,
                    Some(&prov),
                )?;
                out.add(config.out(&format!("counts/state{}.json", r.state)));
                io::write_ensemble(
                    out.add(config.out(&format!("table2_state{}_ensemble.csv", r.state))),
                    Some(&prov),
                    &[
                        "e_min",
                        "discord",
                        "fidelity_to_truth",
                        "werner_p",
                        "werner_fidelity",
                        "werner_e_min",
                        "werner_discord",
                    ],
                    r.replicas.iter().zip(&r.projections).enumerate().map(|(i, (d, w))| {
                        (
                            i,
                            vec![
                                d.e_min,
                                d.discord,
                                d.fidelity,
                                d.werner_p,
                                d.werner_fidelity,
                                w.e_min,
                                w.discord,
                            ],
                        )
                    }),
                )?;
                write_stamped(
                    out.add(config.out(&format!("table2_state{}_stats.json", r.state))),
                    &prov,
                    serde_json::json!({
                        "state": r.state,
                        "p_target": r.p_target,
                        "p_star": r.p_star,
                        "fidelity": r.fidelity,
                        "fidelity_err": r.fidelity_err,
                        "direct": r.direct,
                        "projected_e_min": r.projected_e_min,
                        "projected_discord": r.projected_discord,
                        "average_state": r.average_state,
                        "failures": r.failures,
                    }),
                )?;
            }
        }
        Experiment::Fig4 => {
            io::write_csv(
                out.add(config.out("fig4_scatter.csv")),
                Some(&prov),
                &[
                    "state",
                    "replica_id",
                    "werner_fidelity",
                    "e_min",
                    "werner_p",
                    "werner_e_min",
                ],
                results.iter().flat_map(|r| {
                    r.replicas
                        .iter()
                        .zip(&r.projections)
                        .enumerate()
                        .map(move |(i, (d, w))| {
                            vec![
                                r.state.to_string(),
                                i.to_string(),
                                fmt_f64(d.werner_fidelity),
                                fmt_f64(d.e_min),
                                fmt_f64(w.p),
                                fmt_f64(w.e_min),
                            ]
                        })
                }),
            )?;
            let curve = results
                .iter()
                .flat_map(|r| {
                    (0..=100).map(move |i| {
                        let q = -1.0 / 3.0 + (4.0 / 3.0) * i as f64 / 100.0;
                        let f = dv::werner_fidelity(&dv::werner(r.p_star)?, q)?;
                        Ok(vec![
                            r.state.to_string(),
                            fmt_f64(q),
                            fmt_f64(f),
                            fmt_f64((1.0 - 3.0 * q) / 4.0),
                        ])
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            io::write_csv(
                out.add(config.out("fig4_curve.csv")),
                Some(&prov),
                &["state", "p", "fidelity", "e_min"],
                curve,
            )?;
        }
        _ => {
            io::write_csv(
                out.add(config.out("fig6_scatter.csv")),
                Some(&prov),
                &["state", "replica_id", "werner_p", "discord", "werner_discord"],
                results.iter().flat_map(|r| {
                    r.replicas
                        .iter()
                        .zip(&r.projections)
                        .enumerate()
                        .map(move |(i, (d, w))| {
                            vec![
                                r.state.to_string(),
                                i.to_string(),
                                fmt_f64(w.p),
                                fmt_f64(d.discord),
                                fmt_f64(w.discord),
                            ]
                        })
                }),
            )?;
            let curve = (0..=100)
                .map(|i| {
                    let p = i as f64 / 100.0;
                    Ok(vec![fmt_f64(p), fmt_f64(dv::discord_analytic_werner(p)?)])
                })
                .collect::<Result<Vec<_>>>()?;
            io::write_csv(
                out.add(config.out("fig6_curve.csv")),
                Some(&prov),
                &["p", "discord"],
                curve,
            )?;
        }
    }
    Ok(out)
}

/// Replicas of the `histogram_base_p` configuration against the
/// `histogram_target_p` Werner state.
pub fn fidelity_histogram_run(config: &RunConfig) -> Result<resample::FidelityHistogram> {
    let ps = mle::standard_projector_set();
    let base_state = dv::werner(config.histogram_base_p)?;
    let mut r = rng::child(config.seed, 2000);
    let base = mle::simulate_counts(&base_state, &ps, config.n_scale, NoiseModel::Poisson, &mut r)?;
    let opts = DvResampleOptions {
        std_scale: config.std_scale,
        mle: config.mle_options(2000),
    };
    let ens = resample::dv_replicas(&base, &ps, config.n_mc, config.seed.wrapping_add(2000), opts)?;
    resample::fidelity_histogram(&ens, &dv::werner(config.histogram_target_p)?, config.histogram_bins)
}

fn fig7(config: &RunConfig, prov: &Provenance, mut out: RunOutputs) -> Result<RunOutputs> {
    let h = fidelity_histogram_run(config)?;
    io::write_csv(
        out.add(config.out("fig7_histogram.csv")),
        Some(prov),
        &["bin_lo", "bin_hi", "count"],
        h.counts
            .iter()
            .enumerate()
            .map(|(i, n)| vec![fmt_f64(h.edges[i]), fmt_f64(h.edges[i + 1]), n.to_string()]),
    )?;
    io::write_ensemble(
        out.add(config.out("fig7_fidelities.csv")),
        Some(prov),
        &["fidelity"],
        h.fidelities.iter().enumerate().map(|(i, f)| (i, vec![*f])),
    )?;
    write_stamped(
        out.add(config.out("fig7_fit.json")),
        prov,
        serde_json::json!({
            "base_p": config.histogram_base_p,
            "target_p": config.histogram_target_p,
            "n": h.fidelities.len(),
            "mean": h.mean,
            "beta": h.beta,
            "fit_skipped": h.fit_skipped,
        }),
    )?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn experiment_names_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(Experiment::parse(e.name()).unwrap(), e);
        }
        assert!(Experiment::parse("fig8").unwrap_err().is_config());
    }

    #[test]
    fn json_overrides_and_rejects_unknown_keys() {
        let base = RunConfig::default();
        let merged = base
            .merge_json(&serde_json::json!({"seed": 7, "n_mc": 12, "out": "x"}))
            .unwrap();
        assert_eq!((merged.seed, merged.n_mc), (7, 12));
        assert_eq!(merged.out_dir, PathBuf::from("x"));
        assert!(base
            .merge_json(&serde_json::json!({"bogus": 1}))
            .unwrap_err()
            .is_config());
        assert!(base
            .merge_json(&serde_json::json!({"n_mc": "many"}))
            .unwrap_err()
            .is_config());
    }

    #[test]
    fn out_dir_does_not_affect_hash() {
        let a = RunConfig::default();
        let b = RunConfig {
            out_dir: "elsewhere".into(),
            ..RunConfig::default()
        };
        assert_eq!(a.provenance().unwrap(), b.provenance().unwrap());
    }

    #[test]
    fn validation_flags_config_errors() {
        let bad = RunConfig {
            n_mc: 0,
            ..RunConfig::default()
        };
        assert!(bad.validate().unwrap_err().is_config());
        let bad = RunConfig {
            threshold: Some(vec![1.5]),
            ..RunConfig::default()
        };
        assert!(bad.validate().unwrap_err().is_config());
        let bad = RunConfig {
            states: Some(vec![15]),
            ..RunConfig::default()
        };
        assert!(bad.sts_selection(&[1]).unwrap_err().is_config());
    }
}
