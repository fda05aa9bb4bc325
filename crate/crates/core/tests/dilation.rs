mod common;

use common::{draw, seeds};
use proptest::prelude::*;
use qreality::random::random_observable;
use qreality::{
    build_dilation, complementarity_ledger, random_state_with, tripartite_ssa_experiment, Intensity, MonitoringMap,
    Observable, Purity, Tolerances,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dilation_reproduces_monitoring((seed, shape) in seeds(), eps in 0.0f64..=1.0) {
        let d = draw(seed, shape);
        let u = build_dilation(&MonitoringMap::new(d.obs.clone(), eps).unwrap(), &d.dims).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-12);
        prop_assert!(u.channel_gap(&d.rho).unwrap() < 1e-12);
    }

    #[test]
    fn ledger_sums_to_zero((seed, shape) in seeds(), eps in 0.0f64..=1.0) {
        let d = draw(seed, shape);
        let l = complementarity_ledger(&MonitoringMap::new(d.obs.clone(), eps).unwrap(), &d.rho).unwrap();
        prop_assert!(l.information_zero_sum().abs() < 1e-10);
        prop_assert!(l.reality_zero_sum().abs() < 1e-10);
        prop_assert!(l.joint_entropy_drift.abs() < 1e-10);
        if let Some(gap) = l.entanglement_gap() {
            prop_assert!(gap < 1e-10);
        }
    }

    #[test]
    fn pure_inputs_turn_reality_into_entanglement((seed, shape) in seeds(), eps in 0.0f64..=1.0) {
        let mut d = draw(seed, shape);
        let psi = random_state_with(&mut d.rng, &d.dims, Purity::Pure).unwrap();
        let l = complementarity_ledger(&MonitoringMap::new(d.obs.clone(), eps).unwrap(), &psi).unwrap();
        prop_assert!(l.entanglement_gap().unwrap() < 1e-10);
    }

    #[test]
    fn tripartite_state_obeys_ssa(seed in any::<u64>(), shape in 0usize..3, eps in 0.0f64..=1.0, delta in 0.0f64..=1.0) {
        let mut d = draw(seed, shape);
        let other = random_observable(&mut d.rng, d.obs.target(), d.obs.dim());
        let r = tripartite_ssa_experiment(
            &d.obs,
            Intensity::new(eps).unwrap(),
            &other,
            Intensity::new(delta).unwrap(),
            &d.rho,
        )
        .unwrap();
        prop_assert!(r.ssa_slack >= -1e-9);
        prop_assert!(r.joint_entropy_gap < 1e-10);
        prop_assert!(r.reduced_state_gap < 1e-12);
        prop_assert!(r.sx_entropy_gap < 1e-10);
    }

    #[test]
    fn compatible_monitoring_never_lowers_reality(seed in any::<u64>(), shape in 0usize..3, eps in 0.0f64..=1.0, delta in 0.0f64..=1.0) {
        let d = draw(seed, shape);
        let relabelled = Observable::new(
            d.obs.target(),
            d.obs.eigenvalues().iter().map(|v| 2.0 * v + 1.0).collect(),
            d.obs.basis().clone(),
            &Tolerances::DEFAULT,
        )
        .unwrap();
        let r = tripartite_ssa_experiment(
            &d.obs,
            Intensity::new(eps).unwrap(),
            &relabelled,
            Intensity::new(delta).unwrap(),
            &d.rho,
        )
        .unwrap();
        prop_assert!(r.delta_r_aprime >= -1e-9);
        prop_assert!(r.commutation_gap < 1e-12);
        prop_assert!(r.sy_entropy_gap < 1e-10);
    }
}
