mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homodyne_estimators_are_exactly_unbiased(p in sts_params(), phi in 0.0..std::f64::consts::TAU) {
        estimator_unbiased_exact(p, phi)?;
    }

    #[test]
    fn choleski_states_are_positive(t in choleski()) {
        choleski_positive(&t)?;
    }

    #[test]
    fn dv_fidelity_bounds_trace_distance(a in state(), b in state()) {
        dv_fidelity_bounds(&a, &b)?;
    }

    #[test]
    fn werner_constructions_agree(p in -1.0 / 3.0..=1.0f64) {
        werner_algebra(p)?;
    }

    #[test]
    fn child_streams_are_distinct(seed in any::<u64>()) {
        child_streams_distinct(seed)?;
    }

    #[test]
    fn gaussian_fidelity_is_symmetric_and_bounded(a in sts_params(), b in sts_params()) {
        use tomofid::cv::{cm_from_params, gaussian_fidelity};
        let (ca, cb) = (cm_from_params(a).unwrap(), cm_from_params(b).unwrap());
        let f = gaussian_fidelity(ca, cb).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((f - gaussian_fidelity(cb, ca).unwrap()).abs() < 1e-12);
        prop_assert!((gaussian_fidelity(ca, ca).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn params_survive_the_covariance_round_trip(p in sts_params()) {
        let back = tomofid::cv::params_from_cm(tomofid::cv::cm_from_params(p).unwrap()).unwrap();
        prop_assert!((back.s - p.s).abs() < 1e-12 && (back.mu - p.mu).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn mle_gradient_matches_finite_differences(t in choleski(), truth in state(), seed in any::<u64>()) {
        mle_gradient_matches(&t, &truth, seed)?;
    }

    #[test]
    fn homodyne_reconstruction_is_unbiased(p in sts_params(), seed in any::<u64>()) {
        estimator_unbiased_sampled(p, seed)?;
    }

    #[test]
    fn balloons_shrink_with_threshold(p in sts_params(), t1 in 0.8..0.999f64, t2 in 0.8..0.999f64) {
        balloon_monotone(p, t1, t2)?;
    }

    #[test]
    fn cv_fidelity_bounds_trace_distance(a in sts_params(), b in sts_params()) {
        cv_fidelity_bounds(a, b)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn runs_are_deterministic(seed in any::<u64>()) {
        deterministic(seed)?;
    }
}

#[test]
fn replica_ensembles_do_not_depend_on_thread_count() {
    let p = tomofid::cv::StsParams { s: 0.41, mu: 0.53 };
    let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let a = serial.install(|| tomofid::resample::cv_replicas(p, 400, 16, 9).unwrap());
    let b = tomofid::resample::cv_replicas(p, 400, 16, 9).unwrap();
    assert_eq!(a, b);
}
