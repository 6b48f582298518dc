mod common;

use common::{diff_norm, planar_data};
use proptest::prelude::*;
use unified_clf::clf_core::{
    kappa_interval, lie_data, ClfData, ExpCoupledPlanar, QuadraticClf, StateVector,
};
use unified_clf::formulas::{
    joint_objective, kappa_strategy, lin_sontag, min_cost_weight, opt_region, opt_universal,
    unified, Branch, ControlLaw, FeedbackLaw, ScalingStrategy,
};
use unified_clf::qp_oracle::{solve_joint, solve_pmn, ActiveSet};
use unified_clf::sim_lab::{simulate, SimConfig, TrajectoryStatus};
use unified_clf::Error;

/// Abstract CLF data `(a, b)` with `a ≤ ‖b‖`, `b ≠ 0`, in one to three inputs.
fn compatible_data() -> impl Strategy<Value = ClfData<f64>> {
    (prop::collection::vec(-3.0f64..3.0, 1..=3), -1.0f64..1.0)
        .prop_filter("b must be nonzero", |(b, _)| {
            b.iter().map(|v| v * v).sum::<f64>() > 1e-6
        })
        .prop_map(|(b, t)| {
            let nb = b.iter().map(|v| v * v).sum::<f64>().sqrt();
            // a ranges over [−4, ‖b‖]
            let a = if t < 0.0 { 4.0 * t } else { t * nb };
            ClfData::from_lie(a, b)
        })
}

fn planar_state() -> impl Strategy<Value = StateVector<f64>> {
    (-2.0f64..2.0, -2.0f64..2.0)
        .prop_filter("away from the origin", |(x, y)| x.hypot(*y) > 1e-6)
        .prop_map(|(x, y)| StateVector(vec![x, y]))
}

fn bounded_strategies() -> [ScalingStrategy<f64>; 5] {
    [
        ScalingStrategy::LinSontag,
        ScalingStrategy::KappaOne,
        ScalingStrategy::KappaOneAbs,
        ScalingStrategy::KappaTwo,
        ScalingStrategy::KappaThree,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn bounded_laws_respect_unit_ball(d in compatible_data()) {
        prop_assert!(lin_sontag(&d).u.norm() <= 1.0 + 1e-9);
        for s in bounded_strategies() {
            if let Ok(out) = ControlLaw::Unified(s).evaluate(&d) {
                prop_assert!(out.u.norm() <= 1.0 + 1e-9, "{} gave {}", s.label(), out.u.norm());
            }
        }
        let m = min_cost_weight(&d).max(10.0);
        prop_assert!(opt_universal(&d, m).unwrap().u.norm() <= 1.0 + 1e-9);
    }

    #[test]
    fn unified_meets_tightened_condition_with_equality(d in compatible_data(), t in 0.0f64..=1.0) {
        let k = kappa_interval(&d);
        let kappa = k.lo + t * (k.hi - k.lo);
        let out = unified(&d, kappa).unwrap();
        let rate = d.clf_rate(&out.u);
        let target = -kappa * d.sigma_stg;
        let scale = d.a.abs() + d.sigma_stg + 1.0;
        if d.a + kappa * d.sigma_stg >= 0.0 {
            prop_assert!((rate - target).abs() <= 1e-12 * scale);
        } else {
            prop_assert!(out.u.norm() == 0.0 && rate <= target);
        }
    }

    #[test]
    fn strategies_pick_kappa_in_interval(d in compatible_data()) {
        let k = kappa_interval(&d);
        for s in bounded_strategies() {
            match kappa_strategy(&d, &s) {
                Ok(choice) => prop_assert!(k.contains(choice.kappa, 1e-9)),
                // only the blended strategies may leave the interval, and must say so
                Err(Error::Domain(_)) => prop_assert!(matches!(s, ScalingStrategy::KappaTwo | ScalingStrategy::KappaThree)),
                Err(e) => prop_assert!(false, "{}: {e}", s.label()),
            }
        }
        let m = min_cost_weight(&d);
        let kappa = opt_universal(&d, m).unwrap().kappa.unwrap();
        prop_assert!(k.contains(kappa, 1e-9));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&kappa));
    }

    #[test]
    fn optimization_based_law_beats_any_unified_choice(d in compatible_data(), t in 0.0f64..=1.0) {
        let m = min_cost_weight(&d) + 1.0;
        let best = opt_universal(&d, m).unwrap();
        let k = kappa_interval(&d);
        let kappa = k.lo + t * (k.hi - k.lo);
        let other = unified(&d, kappa).unwrap();
        let j_best = joint_objective(&best.u, best.kappa.unwrap(), m);
        prop_assert!(j_best <= joint_objective(&other.u, kappa, m) + 1e-12);
    }

    #[test]
    fn closed_form_agrees_with_oracle(d in compatible_data()) {
        let m = min_cost_weight(&d).max(10.0);
        let closed = opt_universal(&d, m).unwrap();
        let oracle = solve_joint(&d, m).unwrap();
        prop_assert!(diff_norm(&closed.u, &oracle.u) <= 1e-4);
        prop_assert!((closed.kappa.unwrap() - oracle.kappa).abs() <= 1e-4);
        prop_assert!(oracle.kkt_residuals(&d, m).max() <= 1e-5);
        let expected = match opt_region(&d, m) {
            Branch::Interior => ActiveSet::ClfOnly,
            _ => ActiveSet::ClfAndBall,
        };
        prop_assert_eq!(oracle.active_set, expected);
    }

    #[test]
    fn sontag_matches_projection_oracle(d in compatible_data()) {
        let closed = ControlLaw::Sontag.evaluate(&d).unwrap();
        let oracle = solve_pmn(&d, d.sigma_stg).unwrap();
        prop_assert!(diff_norm(&closed.u, &oracle) <= 1e-12 * (1.0 + oracle.norm()));
    }

    #[test]
    fn single_precision_tracks_double(x in planar_state()) {
        let d64 = planar_data(&x);
        let x32 = StateVector(x.iter().map(|&v| v as f32).collect());
        let d32 = lie_data(&ExpCoupledPlanar, &QuadraticClf::new(2), &x32).unwrap();
        if min_cost_weight(&d64) < 9.9 {
            let u64 = opt_universal(&d64, 10.0).unwrap().u;
            let u32 = opt_universal(&d32, 10.0f32).unwrap().u;
            for (p, q) in u64.iter().zip(u32.iter()) {
                prop_assert!((p - f64::from(*q)).abs() <= 1e-3);
            }
        }
        let ls64 = lin_sontag(&d64).u;
        let ls32 = lin_sontag(&d32).u;
        for (p, q) in ls64.iter().zip(ls32.iter()) {
            prop_assert!((p - f64::from(*q)).abs() <= 1e-3);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn short_runs_keep_trajectory_invariants(x in planar_state(), pick in 0usize..4) {
        let law = [
            ControlLaw::LinSontag,
            ControlLaw::Unified(ScalingStrategy::KappaOne),
            ControlLaw::Unified(ScalingStrategy::KappaOneAbs),
            ControlLaw::OptBased { m: 300.0 },
        ][pick];
        let cfg = SimConfig::new(x, 0.5, 1e-2).with_cost_weight(10.0);
        let traj = simulate(&ExpCoupledPlanar, &QuadraticClf::new(2), &law, &cfg).unwrap();
        prop_assert_eq!(&traj.status, &TrajectoryStatus::Complete);
        prop_assert_eq!(traj.samples.len(), 51);
        for (k, pair) in traj.samples.windows(2).enumerate() {
            prop_assert!((pair[1].t - (k + 1) as f64 * 1e-2).abs() < 1e-12);
            prop_assert!(pair[1].t > pair[0].t);
            prop_assert!(pair[1].cost_cum >= pair[0].cost_cum);
            prop_assert!(pair[1].v <= pair[0].v);
        }
        prop_assert!(traj.samples.iter().all(|s| s.v >= 0.0 && s.u.norm() <= 1.0 + 1e-9));
    }
}
