//! Property tests over randomized inputs: the two Born-rule routes agree,
//! quantum behaviours are normalized and no-signalling, the estimator is
//! exactly convex, and the divergence metrics respect their identities.

use onebit_core::bloch::BlochVector;
use onebit_core::lhv::{estimate_behavior, MaxEntangledProtocol, SemianalyticalProtocol, presets};
use onebit_core::qstate::{born_behavior, closed_form_stats, TwoQubitState};
use onebit_core::stats::{divergence_report, kl_divergence, tvd, Smoothing};
use proptest::prelude::*;

fn direction() -> impl Strategy<Value = BlochVector> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter_map("non-degenerate direction", |(x, y, z)| {
            BlochVector::normalized(x, y, z).ok()
        })
}

fn theta() -> impl Strategy<Value = f64> {
    0.0..std::f64::consts::FRAC_PI_4
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn born_and_closed_form_agree(theta in theta(), a in direction(), b in direction()) {
        let state = TwoQubitState::new(theta).unwrap();
        let beh = born_behavior(&state, &a, &b);
        let table = closed_form_stats(&state, &a, &b).table();
        for ia in 0..2 {
            for ib in 0..2 {
                prop_assert!((beh.prob(0, 0, ia, ib) - table[ia][ib]).abs() <= 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn born_behavior_is_normalized_and_no_signalling(
        theta in theta(), a in direction(), b in direction()
    ) {
        let state = TwoQubitState::new(theta).unwrap();
        let beh = born_behavior(&state, &a, &b);
        let sum: f64 = beh.table().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-10);
        prop_assert!(beh.check_no_signalling(1e-10).is_ok());
    }

    #[test]
    fn singlet_correlator_is_rotation_invariant(a in direction(), b in direction(), angle in 0.0f64..std::f64::consts::TAU) {
        // rotation about z by `angle` composed with a fixed axis swap
        let (s, c) = angle.sin_cos();
        let rot = [[c, -s, 0.0], [0.0, 0.0, 1.0], [s, c, 0.0]];
        // rows orthonormal: [c,-s,0],[0,0,1],[s,c,0]
        let state = TwoQubitState::max_entangled();
        let e1 = closed_form_stats(&state, &a, &b).correlator;
        let e2 = closed_form_stats(
            &state,
            &a.rotated(&rot).unwrap(),
            &b.rotated(&rot).unwrap(),
        )
        .correlator;
        prop_assert!((e1 - e2).abs() <= 1e-12);
    }

    #[test]
    fn estimator_is_exactly_convex(a in direction(), b in direction(), seed in any::<u64>()) {
        let proto = SemianalyticalProtocol::new(presets::preset("3pi/16").unwrap());
        let mut rng = onebit_core::stream::stream_rng(seed, 0);
        let est = estimate_behavior(&proto, &a, &b, 500, &mut rng).unwrap();
        let sum: f64 = est.table().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
        prop_assert!(est.table().iter().all(|&p| p >= 0.0));
    }
}

fn random_table(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(1e-6f64..1.0, len).prop_map(|mut v| {
        let total: f64 = v.iter().sum();
        for x in v.iter_mut() {
            *x /= total;
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn kl_and_tvd_identities(t in random_table(4), m in random_table(4)) {
        prop_assert!(kl_divergence(&t, &t).unwrap() == 0.0);
        prop_assert!(tvd(&t, &t).unwrap() == 0.0);
        let report = divergence_report(&t, &m, Smoothing::None).unwrap();
        prop_assert!(report.kl >= 0.0);
        prop_assert!((0.0..=1.0).contains(&report.tvd));
        // Pinsker with rounding slack
        prop_assert!(report.satisfies_pinsker(1e-12));
    }

    #[test]
    fn estimator_comparison_is_pinsker_consistent(a in direction(), b in direction(), seed in any::<u64>()) {
        let state = TwoQubitState::max_entangled();
        let mut rng = onebit_core::stream::stream_rng(seed, 3);
        let est = estimate_behavior(&MaxEntangledProtocol, &a, &b, 2000, &mut rng).unwrap();
        let target = born_behavior(&state, &a, &b);
        let report = divergence_report(
            target.table(),
            est.table(),
            Smoothing::Floor(1e-9),
        )
        .unwrap();
        prop_assert!(report.satisfies_pinsker(1e-12));
        prop_assert!(report.n95 > 0.0);
    }
}
