//! Property checks shared by the proptest suites and the acceptance runner.
#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use tomofid::cv::{self, cm_from_params, fock, gaussian_fidelity, StsParams};
use tomofid::dv::{self, DensityMatrix4, Subsystem};
use tomofid::homodyne::{self, PhaseSchedule};
use tomofid::mle::{self, CholeskiParams, MleOptions, NoiseModel};
use tomofid::resample::{self, BalloonSpec, DvResampleOptions, GridSpec};
use tomofid::rng;

pub type Check = std::result::Result<(), TestCaseError>;

pub fn sts_params() -> impl Strategy<Value = StsParams> {
    (0.25..1.2f64, 0.3..1.0f64).prop_map(|(s, mu)| StsParams { s, mu })
}

pub fn choleski() -> impl Strategy<Value = CholeskiParams> {
    prop::array::uniform16(-2.0..2.0f64)
        .prop_filter("nonzero", |t| t.iter().any(|v| v.abs() > 1e-3))
        .prop_map(|t| CholeskiParams { t })
}

pub fn state() -> impl Strategy<Value = DensityMatrix4> {
    choleski().prop_map(|t| mle::rho_from_choleski(&t).unwrap())
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

/// Kernels are affine in `x²`, so replacing `x²` by `<Δx²_θ>` and averaging
/// over a uniform phase grid gives the target moment exactly.
pub fn estimator_unbiased_exact(p: StsParams, phi: f64) -> Check {
    let n = 64;
    let (mut sq, mut num) = (0.0, 0.0);
    for k in 0..n {
        let theta = 2.0 * PI * k as f64 / n as f64;
        let v = p.quadrature_variance(theta);
        let k0 = homodyne::estimator_quadrature_sq(0.0, theta, phi);
        let k1 = homodyne::estimator_quadrature_sq(1.0, theta, phi);
        sq += k0 + (k1 - k0) * v;
        let n0 = homodyne::estimator_photon_number(0.0);
        num += n0 + (homodyne::estimator_photon_number(1.0) - n0) * v;
    }
    sq /= n as f64;
    num /= n as f64;
    prop_assert!(
        (sq - p.quadrature_variance(phi)).abs() < 1e-10,
        "{sq} vs {}",
        p.quadrature_variance(phi)
    );
    prop_assert!((num - p.energy().n_tot).abs() < 1e-10, "{num} vs {}", p.energy().n_tot);
    Ok(())
}

/// Reconstructed variances and energy lie within 5 standard errors.
pub fn estimator_unbiased_sampled(p: StsParams, seed: u64) -> Check {
    let ds =
        homodyne::simulate_homodyne(p, 4000, PhaseSchedule::UniformRandom, &mut rng::master(seed)).map_err(fail)?;
    let rec = homodyne::reconstruct_cm(&ds).map_err(fail)?;
    prop_assert!(rec.var_x.within(p.quadrature_variance(0.0), 5.0), "{:?}", rec.var_x);
    prop_assert!(
        rec.var_p.within(p.quadrature_variance(PI / 2.0), 5.0),
        "{:?}",
        rec.var_p
    );
    prop_assert!(rec.n_tot.within(p.energy().n_tot, 5.0), "{:?}", rec.n_tot);
    Ok(())
}

/// `1 − √F ≤ D ≤ √(1 − F)` for two-qubit states.
pub fn dv_fidelity_bounds(a: &DensityMatrix4, b: &DensityMatrix4) -> Check {
    let f = dv::uhlmann_fidelity(a, b).map_err(fail)?;
    let d = dv::trace_distance(a, b);
    let (lo, hi) = cv::trace_distance_bounds(f).map_err(fail)?;
    prop_assert!(lo <= d + 1e-9 && d <= hi + 1e-9, "F={f} D={d} bounds=({lo}, {hi})");
    let self_f = dv::uhlmann_fidelity(a, a).map_err(fail)?;
    prop_assert!((self_f - 1.0).abs() < 1e-8, "F(a, a) = {self_f}");
    let swapped = dv::uhlmann_fidelity(b, a).map_err(fail)?;
    prop_assert!((swapped - f).abs() < 1e-8);
    Ok(())
}

/// Closed-form Gaussian fidelity bounds the Fock-basis trace distance.
pub fn cv_fidelity_bounds(a: StsParams, b: StsParams) -> Check {
    let f = gaussian_fidelity(cm_from_params(a).map_err(fail)?, cm_from_params(b).map_err(fail)?).map_err(fail)?;
    let d = fock::fock_trace_distance(a, b).map_err(fail)?;
    let (lo, hi) = cv::trace_distance_bounds(f).map_err(fail)?;
    prop_assert!(lo <= d + 1e-6 && d <= hi + 1e-6, "F={f} D={d} bounds=({lo}, {hi})");
    Ok(())
}

/// Every nonzero `T` gives a Hermitian, positive, unit-trace state.
pub fn choleski_positive(t: &CholeskiParams) -> Check {
    let r = mle::rho_from_choleski(t).map_err(fail)?;
    let m = r.matrix();
    prop_assert!((m.trace().re - 1.0).abs() < 1e-12 && m.trace().im.abs() < 1e-12);
    prop_assert!((m - m.adjoint()).norm() < 1e-12);
    let min = r.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
    prop_assert!(min >= -1e-12, "min eigenvalue {min}");
    Ok(())
}

/// Analytic gradient against central differences.
pub fn mle_gradient_matches(t: &CholeskiParams, truth: &DensityMatrix4, seed: u64) -> Check {
    let ps = mle::standard_projector_set();
    let counts = mle::simulate_counts(truth, &ps, 1000.0, NoiseModel::Poisson, &mut rng::master(seed)).map_err(fail)?;
    let mut g = [0.0; 16];
    mle::likelihood_and_gradient(&t.t, &counts, &ps, &mut g).map_err(fail)?;
    let scale = 1.0 + g.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut scratch = [0.0; 16];
    for k in 0..16 {
        let h = 1e-6 * (1.0 + t.t[k].abs());
        let (mut up, mut dn) = (t.t, t.t);
        up[k] += h;
        dn[k] -= h;
        let fu = mle::likelihood_and_gradient(&up, &counts, &ps, &mut scratch).map_err(fail)?;
        let fd = mle::likelihood_and_gradient(&dn, &counts, &ps, &mut scratch).map_err(fail)?;
        let fd_g = (fu - fd) / (2.0 * h);
        prop_assert!(
            (fd_g - g[k]).abs() <= 1e-5 * scale,
            "component {k}: analytic {} numeric {fd_g}",
            g[k]
        );
    }
    Ok(())
}

/// `werner_from_mixing(p) = werner(p)` and `e_m = (1 − 3p)/4` for `p ≥ 0`.
pub fn werner_algebra(p: f64) -> Check {
    let w = dv::werner(p).map_err(fail)?;
    let m = dv::werner_from_mixing(p).map_err(fail)?;
    prop_assert!(tomofid::linalg::max_abs_diff(w.matrix(), m.matrix()) < 1e-12);
    if p >= 0.0 {
        prop_assert!((dv::min_ppt_eigenvalue(&w) - (1.0 - 3.0 * p) / 4.0).abs() < 1e-12);
    }
    Ok(())
}

/// Raising the threshold can only shrink the balloon.
pub fn balloon_monotone(target: StsParams, t1: f64, t2: f64) -> Check {
    let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
    let grid = GridSpec {
        n_s: 40,
        n_mu: 40,
        ..GridSpec::default()
    };
    let spec = |t| BalloonSpec {
        target,
        f_threshold: t,
        energy_window: None,
    };
    let a = resample::fidelity_balloon(spec(lo), grid).map_err(fail)?;
    let b = resample::fidelity_balloon(spec(hi), grid).map_err(fail)?;
    prop_assert!(b.n_in_balloon <= a.n_in_balloon);
    for (pa, pb) in a.points.iter().zip(&b.points) {
        prop_assert!(!pb.in_balloon || pa.in_balloon);
    }
    Ok(())
}

/// Every stochastic entry point is a pure function of its seed.
pub fn deterministic(seed: u64) -> Check {
    let p = StsParams { s: 0.41, mu: 0.53 };
    let h = |s| homodyne::simulate_homodyne(p, 500, PhaseSchedule::UniformRandom, &mut rng::master(s)).unwrap();
    prop_assert_eq!(h(seed).samples, h(seed).samples);

    let cv = |s| resample::cv_replicas(p, 300, 8, s).unwrap();
    prop_assert_eq!(cv(seed), cv(seed));

    let ps = mle::standard_projector_set();
    let w = dv::werner(0.44).map_err(fail)?;
    let counts = |s| mle::simulate_counts(&w, &ps, 1500.0, NoiseModel::Poisson, &mut rng::master(s)).unwrap();
    let base = counts(seed);
    prop_assert_eq!(&base, &counts(seed));

    let opts = MleOptions {
        seed,
        ..MleOptions::default()
    };
    let fit = |_| mle::mle_fit_with(&base, &ps, None, opts).unwrap();
    prop_assert_eq!(fit(0), fit(1));

    let dvr = |_| resample::dv_replicas(&base, &ps, 4, seed, DvResampleOptions::default()).unwrap();
    prop_assert_eq!(dvr(0), dvr(1));

    let d = |_| dv::discord_numeric(&w, Subsystem::A).unwrap();
    prop_assert_eq!(d(0), d(1));

    let b = |_| resample::bootstrap_means(&[1.0, 2.0, 4.0], 16, seed).unwrap();
    prop_assert_eq!(b(0), b(1));
    Ok(())
}

/// Distinct child streams of one seed do not coincide.
pub fn child_streams_distinct(seed: u64) -> Check {
    use rand::Rng;
    let draws: Vec<u64> = (0..8).map(|i| rng::child(seed, i).random()).collect();
    let mut sorted = draws.clone();
    sorted.sort_unstable();
    sorted.dedup();
    prop_assert_eq!(sorted.len(), draws.len());
    prop_assert_ne!(rng::master(seed).random::<u64>(), draws[0]);
    Ok(())
}
