//! Closed-form cross-checks of reference values, each computed here without
//! the library routine it checks.

use tomofid::cv::{self, cm_from_params, fock, gaussian_fidelity, StsParams};
use tomofid::data::sts_row;
use tomofid::dv::{self, Bell, Subsystem};
use tomofid::mle::{self, CholeskiParams, NoiseModel};
use tomofid::resample;
use tomofid::rng;

const STATE7: StsParams = StsParams { s: 0.41, mu: 0.53 };

fn photons(p: StsParams) -> (f64, f64) {
    let n_th = (1.0 / p.mu - 1.0) / 2.0;
    let n_s = (p.s + 1.0 / p.s - 2.0) / 4.0;
    (n_th, n_s)
}

#[test]
fn state7_energy_budget() {
    let (n_th, n_s) = photons(STATE7);
    assert!((n_th - 0.4434).abs() < 5e-5);
    assert!((n_s - 0.2122).abs() < 1e-4);
    let n_tot = n_th * (1.0 + 2.0 * n_s) + n_s;
    assert!((n_tot - 0.844).abs() < 5e-4);

    let e = STATE7.energy();
    assert!((e.n_th - n_th).abs() < 1e-12 && (e.n_s - n_s).abs() < 1e-12);
    assert!((e.n_tot - n_tot).abs() < 1e-12);
    assert!((cv::total_energy(n_th, n_s).unwrap() - n_tot).abs() < 1e-12);
}

#[test]
fn state7_variances_from_energy() {
    let (vxx, vpp) = cv::variances_from_energy(0.844, 0.2122).unwrap();
    assert!((vxx - 0.774).abs() < 1e-3, "{vxx}");
    assert!((vpp - 4.602).abs() < 1e-3, "{vpp}");
    let (_, n_s) = photons(STATE7);
    let n_tot = STATE7.energy().n_tot;
    let (vxx, vpp) = cv::variances_from_energy(n_tot, n_s).unwrap();
    assert!((vxx - STATE7.s / STATE7.mu).abs() < 1e-12);
    assert!((vpp - 1.0 / (STATE7.s * STATE7.mu)).abs() < 1e-12);
}

#[test]
fn nonclassicality_boundary() {
    let below = |s: f64, mu: f64| s < mu || s * mu > 1.0;
    for (s, mu, expected) in [(0.42, 0.44, true), (0.42, 0.38, false), (0.41, 0.53, true)] {
        assert_eq!(below(s, mu), expected);
        assert_eq!(cv::is_nonclassical(StsParams { s, mu }), expected);
    }
}

#[test]
fn balloon_spot_fidelities() {
    let target = cm_from_params(STATE7).unwrap();
    for (k, quoted) in [(1, 0.9208), (14, 0.9461)] {
        let p = sts_row(k).unwrap().params();
        let f = gaussian_fidelity(cm_from_params(p).unwrap(), target).unwrap();
        let f_fock = fock::fock_fidelity(p, STATE7).unwrap();
        assert!((f - f_fock).abs() < 1e-6, "state {k}: {f} vs {f_fock}");
        assert!((f - quoted).abs() < 1e-3, "state {k}: {f}");
    }
}

#[test]
fn thermal_amplitudes_have_mean_n_th() {
    let mut r = rng::master(126);
    let n = 100_000;
    let draws: Vec<f64> = (0..n)
        .map(|_| cv::sample_thermal_amplitude(0.44, &mut r).unwrap().norm_sqr())
        .collect();
    let mean = draws.iter().sum::<f64>() / n as f64;
    let sd = (draws.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    assert!((mean - 0.44).abs() < 3.0 * sd / (n as f64).sqrt(), "{mean}");
}

#[test]
fn werner_fidelities() {
    for p in [0.0, 0.28, 0.44, 1.0] {
        let f = dv::uhlmann_fidelity(&dv::bell_state(Bell::PsiMinus), &dv::werner(p).unwrap()).unwrap();
        assert!((f - (1.0 + 3.0 * p) / 4.0).abs() < 1e-9);
    }
    let spectrum = |p: f64| [(1.0 + 3.0 * p) / 4.0, (1.0 - p) / 4.0];
    let (a, b) = (spectrum(0.28), spectrum(0.44));
    let closed = ((a[0] * b[0]).sqrt() + 3.0 * (a[1] * b[1]).sqrt()).powi(2);
    assert!((closed - 0.9856).abs() < 5e-5, "{closed}");
    let f = dv::uhlmann_fidelity(&dv::werner(0.28).unwrap(), &dv::werner(0.44).unwrap()).unwrap();
    assert!((f - closed).abs() < 1e-9);
    assert!((dv::werner_fidelity(&dv::werner(0.28).unwrap(), 0.44).unwrap() - closed).abs() < 1e-9);
}

#[test]
fn werner_extremes() {
    assert!((dv::min_ppt_eigenvalue(&dv::werner(1.0).unwrap()) + 0.5).abs() < 1e-12);
    let p = 0.44;
    let mixed = dv::werner_from_mixing(p).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let singlet = match (i, j) {
                (1, 1) | (2, 2) => 0.5,
                (1, 2) | (2, 1) => -0.5,
                _ => 0.0,
            };
            let expected = p * singlet + if i == j { (1.0 - p) / 4.0 } else { 0.0 };
            let got = mixed.matrix()[(i, j)];
            assert!((got.re - expected).abs() < 1e-12 && got.im.abs() < 1e-12, "({i}, {j})");
        }
    }
}

#[test]
fn discord_extremes() {
    // 2 + 0 − 1 at p = 1 with x log x terms in bits
    let xlog = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    let closed = |p: f64| 0.25 * xlog(1.0 - p) - 0.5 * xlog(1.0 + p) + 0.25 * xlog(1.0 + 3.0 * p);
    assert!((closed(1.0) - 1.0).abs() < 1e-12);
    assert!((dv::discord_analytic_werner(1.0).unwrap() - 1.0).abs() < 1e-12);
    for p in [0.1, 0.28, 0.44, 0.7, 1.0] {
        let numeric = dv::discord_numeric(&dv::werner(p).unwrap(), Subsystem::A)
            .unwrap()
            .value;
        assert!((numeric - closed(p)).abs() < 1e-3, "p={p}: {numeric} vs {}", closed(p));
    }
    let bell = dv::discord_numeric(&dv::bell_state(Bell::PsiMinus), Subsystem::B).unwrap();
    assert!((bell.value - 1.0).abs() < 1e-3);
}

#[test]
fn projector_gram_is_nonsingular() {
    let ps = mle::standard_projector_set();
    let det = ps.gram().determinant();
    assert!(det.abs() > 1e-6, "{det}");
}

#[test]
fn werner_one_counts() {
    let w = dv::werner(1.0).unwrap();
    let ps = mle::standard_projector_set();
    let q = ps.probabilities(w.matrix());
    let hh = ps.labels().iter().position(|l| l == "HH").unwrap();
    let hv = ps.labels().iter().position(|l| l == "HV").unwrap();
    assert!(q[hh].abs() < 1e-15);
    let counts = mle::simulate_counts(&w, &ps, 1000.0, NoiseModel::None, &mut rng::master(0)).unwrap();
    assert!(counts.counts[hh].abs() < 1e-12);
    assert!((counts.counts[hv] - 500.0).abs() < 1e-9);
}

#[test]
fn likelihood_is_quadratic_in_count_errors() {
    let w = dv::werner(0.44).unwrap();
    let ps = mle::standard_projector_set();
    let exact = mle::simulate_counts(&w, &ps, 1000.0, NoiseModel::None, &mut rng::master(0)).unwrap();
    let t = CholeskiParams::from_state(w.matrix()).unwrap();
    assert!(mle::likelihood(&t, &exact, &ps).unwrap() < 1e-16);
    let q = ps.probabilities(w.matrix());
    let nn = exact.normalization();
    for (j, delta) in [(5, 0.5), (9, -1.0), (15, 2.0)] {
        let mut bumped = exact.clone();
        bumped.counts[j] += delta;
        let l = mle::likelihood(&t, &bumped, &ps).unwrap();
        let expected = delta * delta / (2.0 * nn * q[j]);
        assert!((l - expected).abs() < 1e-9 * expected.max(1.0), "{l} vs {expected}");
    }
}

#[test]
fn noiseless_fits_recover_truth() {
    let ps = mle::standard_projector_set();
    let truth = dv::werner(0.44).unwrap();
    let counts = mle::simulate_counts(&truth, &ps, 1e4, NoiseModel::None, &mut rng::master(0)).unwrap();
    let (rho, _) = mle::mle_fit(&counts, &ps, None).unwrap();
    assert!(dv::uhlmann_fidelity(&rho, &truth).unwrap() >= 0.9999);

    let bell = dv::bell_state(Bell::PsiMinus);
    let counts = mle::simulate_counts(&bell, &ps, 1e4, NoiseModel::None, &mut rng::master(0)).unwrap();
    let (rho, _) = mle::mle_fit(&counts, &ps, None).unwrap();
    assert!(dv::uhlmann_fidelity(&rho, &bell).unwrap() >= 0.999);
}

#[test]
fn only_the_near_boundary_state_straddles_the_classical_line() {
    let fraction = |k: usize| {
        let e = resample::cv_replicas(sts_row(k).unwrap().params(), 7000, 400, 537).unwrap();
        resample::classify_cv_ensemble(&e).unwrap().nonclassical_fraction
    };
    assert_eq!(fraction(7), 1.0);
    let f9 = fraction(9);
    assert!(f9 > 0.0 && f9 < 1.0, "{f9}");
}

#[test]
fn beta_fit_of_uniform_sample() {
    let n = 20_000;
    let u: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
    let fit = resample::beta_fit_moments(&u).unwrap();
    assert!((fit.alpha - 1.0).abs() < 0.1 && (fit.beta - 1.0).abs() < 0.1, "{fit:?}");
}
