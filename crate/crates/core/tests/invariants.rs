use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;

use qubit_dephasing::bath::BathSpec;
use qubit_dephasing::bloch::{relative_unitary, QubitOperator, ALGEBRA_TOL};
use qubit_dephasing::dynamics::{
    coherence_trajectory, entropy, gamma_cor_selective, linear_grid, purity, unwrap_phase, QubitParams,
};
use qubit_dephasing::quadrature::{integrate, QuadratureOptions};
use qubit_dephasing::scenario::ScenarioConfig;
use qubit_dephasing::{BlochDirection, PreparationScheme};

fn direction() -> impl Strategy<Value = BlochDirection> {
    (0.0..=PI, -PI..PI).prop_map(|(t, p)| BlochDirection::new(t, p).unwrap())
}

fn scheme() -> impl Strategy<Value = PreparationScheme> {
    (0..6usize, direction(), direction(), direction()).prop_map(|(k, a, b, c)| match k {
        0 => PreparationScheme::selective_along(&a),
        1 => PreparationScheme::general(a, b, c),
        2 => PreparationScheme::undisturbed(a),
        3 => PreparationScheme::rotated(a, b),
        4 => PreparationScheme::collapsing(a, b),
        _ => PreparationScheme::collapsing_antiphase(a, b),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn measurement_effects_resolve_identity(s in scheme()) {
        prop_assume!(s.non_selective().is_some());
        let sum: QubitOperator = s.operators().iter().map(|o| o.effect).sum();
        prop_assert!(sum.max_abs_diff(&QubitOperator::identity()) < ALGEBRA_TOL);
        for o in s.operators() {
            let f = o.omega.dagger() * o.omega;
            prop_assert!(f.max_abs_diff(&o.effect) < ALGEBRA_TOL);
        }
    }

    #[test]
    fn relative_unitary_maps_states(a in direction(), b in direction()) {
        let u = relative_unitary(&b, &a);
        prop_assert!(u.unitarity_residual() < ALGEBRA_TOL);
        let v = u.apply(&a.state());
        prop_assert!(v.projector().max_abs_diff(&b.state().projector()) < ALGEBRA_TOL);
    }

    #[test]
    fn initial_state_is_physical(s in scheme(), bw in 0.01..10.0f64) {
        let avg = s.initial_averages(bw).unwrap();
        prop_assert!(avg.bloch_magnitude() <= 1.0 + ALGEBRA_TOL);
        prop_assert_eq!(avg.sigma_minus, avg.sigma_plus.conj());
    }

    #[test]
    fn purity_and_entropy_are_monotone_in_bloch_length(v in 0.0..=1.0f64, dv in 1e-6..1e-2f64) {
        let w = (v + dv).min(1.0);
        let (p, q) = (purity(v).unwrap(), purity(w).unwrap());
        let (s, r) = (entropy(v).unwrap(), entropy(w).unwrap());
        prop_assert!((0.5..=1.0).contains(&p));
        prop_assert!((0.0..=LN_2 + 1e-15).contains(&s));
        if w > v {
            prop_assert!(q > p);
            prop_assert!(r < s);
        }
    }

    #[test]
    fn selective_gamma_cor_is_non_negative(sz in -1.0..=1.0f64, bw in 0.01..10.0f64, phi in -10.0..10.0f64) {
        prop_assert!(gamma_cor_selective(sz, bw, phi).unwrap() >= -1e-15);
    }

    #[test]
    fn unwrapped_phase_is_continuous(raw in prop::collection::vec(-PI..PI, 2..50)) {
        let mut v = raw.clone();
        unwrap_phase(&mut v);
        for (w, r) in v.windows(2).zip(raw.iter().skip(1).zip(&v[1..])) {
            prop_assert!((w[1] - w[0]).abs() <= PI + 1e-12);
            let turns = (r.1 - r.0) / (2.0 * PI);
            prop_assert!((turns - turns.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn quadrature_is_exact_on_cubics(c in prop::array::uniform4(-5.0..5.0f64), a in -3.0..0.0f64, b in 0.1..3.0f64) {
        let f = |x: f64| c[0] + x * (c[1] + x * (c[2] + x * c[3]));
        let prim = |x: f64| x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
        let r = integrate(f, a, b, &QuadratureOptions::default()).unwrap();
        prop_assert!((r.value - (prim(b) - prim(a))).abs() < 1e-11);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trajectory_invariants(
        s in scheme(),
        lambda in 0.1..6.0f64,
        bw in 0.05..5.0f64,
        ratio in 0.01..1.0f64,
    ) {
        let grid = linear_grid(0.0, 10.0, 25);
        let bath = BathSpec::ohmic(lambda).unwrap();
        let params = QubitParams::new(bw, ratio).unwrap();
        let traj = coherence_trajectory(&s, &bath, &params, &grid).unwrap();
        let sz = traj.initial.sigma_z;
        prop_assert!((traj.points[0].coherence_plus - traj.initial.sigma_plus).norm() < 1e-14);
        for p in &traj.points {
            prop_assert!(p.bloch_v <= 1.0 + 1e-9);
            prop_assert!(p.gamma >= 0.0);
            let v = (4.0 * p.coherence_plus.norm_sqr() + sz * sz).sqrt();
            prop_assert!((v - p.bloch_v).abs() < 1e-12);
            prop_assert_eq!(p.purity, purity(p.bloch_v).unwrap());
            if let (Some(g), Some(e)) = (p.gamma_cor, p.gamma_eff) {
                prop_assert_eq!(e, p.gamma + g);
            }
        }
    }

    #[test]
    fn collapsing_matches_equal_population_selective(
        a in direction(),
        b in direction(),
        phase in -PI..PI,
        lambda in 0.1..6.0f64,
        bw in 0.05..5.0f64,
    ) {
        let grid = linear_grid(0.0, 10.0, 25);
        let bath = BathSpec::ohmic(lambda).unwrap();
        let params = QubitParams::new(bw, 0.1).unwrap();
        let equator = BlochDirection::new(PI / 2.0, phase).unwrap();
        let iii = coherence_trajectory(&PreparationScheme::collapsing(a, b), &bath, &params, &grid).unwrap();
        let sel = coherence_trajectory(&PreparationScheme::selective_along(&equator), &bath, &params, &grid).unwrap();
        for (p, q) in iii.points.iter().zip(&sel.points) {
            prop_assert!((p.gamma_cor.unwrap() - q.gamma_cor.unwrap()).abs() < 1e-12);
            prop_assert!((p.chi.unwrap() - q.chi.unwrap()).abs() < 1e-12);
            prop_assert!((p.reduced_coherence.unwrap() - q.reduced_coherence.unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn config_round_trip(bw in 0.01..10.0f64, lambda in 0.1..6.0f64, theta in 0.0..=180.0f64, n in 2usize..500) {
        let text = format!(r#"{{
            "scheme": {{ "kind": "collapsing", "unit": "deg", "a": {{ "theta": {theta}, "phi": 10 }}, "b": {{ "theta": 45, "phi": 0 }} }},
            "bath": {{ "kind": "ohmic_family", "s": 1.0, "lambda": {lambda} }},
            "temperature": {{ "beta_omega0": {bw} }},
            "ratio": {{ "omega0_over_omegac": 0.1 }},
            "grid": {{ "t_max_omega_c": 5, "n_points": {n}, "spacing": "log" }}
        }}"#);
        let cfg = ScenarioConfig::from_json(&text).unwrap();
        let once = cfg.to_json();
        prop_assert_eq!(&ScenarioConfig::from_json(&once).unwrap(), &cfg);
        prop_assert_eq!(ScenarioConfig::from_json(&once).unwrap().to_json(), once);
        prop_assert_eq!(cfg.build().unwrap().grid.len(), n);
    }
}

#[test]
fn sigma_z_is_conserved_by_the_fock_evolution() {
    use qubit_dephasing::fock::{apply_preparation, build_equilibrium, evolve_full};
    use qubit_dephasing::verify::{oracle_modes, ORACLE_OMEGA0};
    use qubit_dephasing::FockSystem;

    let fs = FockSystem::new(ORACLE_OMEGA0, oracle_modes(11)).unwrap();
    let a = BlochDirection::new(1.0, 0.2).unwrap();
    let b = BlochDirection::new(2.0, -1.0).unwrap();
    let rho = apply_preparation(&build_equilibrium(&fs, 4.0).unwrap(), &PreparationScheme::rotated(a, b)).unwrap();
    let sz0 = rho.expectation(&QubitOperator::sigma_z());
    for t in [0.5, 2.0, 4.0] {
        let later = evolve_full(&fs, &rho, t);
        let sz: Complex64 = later.expectation(&QubitOperator::sigma_z());
        assert!((sz - sz0).norm() < 1e-12, "t={t}");
    }
}
