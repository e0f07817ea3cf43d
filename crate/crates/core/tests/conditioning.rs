//! Rotated and antiphase schemes lose relative accuracy as the measured
//! direction approaches the equator: `N₁`, `N₂`, `D` and the initial coherence
//! all carry a factor `cos θ_a`, while the inputs `π − θ` and `φ + π` are
//! rounded. The error in `γ_cor` grows like `ε / |cos θ_a|`, not faster.

use std::f64::consts::PI;

use qubit_dephasing::dynamics::{gamma_cor_general, gamma_cor_rotated, linear_grid, scheme_kernel_params};
use qubit_dephasing::{BlochDirection, PreparationScheme};

/// `None` once the constants fall below the degeneracy threshold.
fn worst_error(cos_a: f64) -> Option<f64> {
    let grid = linear_grid(-3.0 * PI, 3.0 * PI, 601);
    let mut worst: f64 = 0.0;
    for (k, bw) in [0.05, 0.3, 1.0, 5.0].into_iter().enumerate() {
        let a = BlochDirection::new(cos_a.acos(), 0.7 * k as f64 - 1.0).unwrap();
        let b = BlochDirection::new(0.4 + 0.6 * k as f64, 2.0 - 1.3 * k as f64).unwrap();
        for s in [PreparationScheme::rotated(a, b), PreparationScheme::collapsing_antiphase(a, b)] {
            let p = scheme_kernel_params(&s, bw).unwrap();
            if p.is_degenerate() {
                return None;
            }
            for &phi in &grid {
                let e = gamma_cor_general(&p, phi).unwrap() - gamma_cor_rotated(bw, phi).unwrap();
                worst = worst.max(e.abs());
            }
        }
    }
    Some(worst)
}

#[test]
fn error_scales_inversely_with_polar_cosine() {
    let mut resolved = 0;
    for cos_a in [0.9, 0.3, 0.05, 5e-3, 5e-4, 5e-5, 5e-6] {
        let Some(e) = worst_error(cos_a) else {
            println!("cos theta_a = {cos_a:.0e}: degenerate");
            continue;
        };
        resolved += 1;
        println!("cos theta_a = {cos_a:.0e}: max |gamma_cor - closed form| = {e:.2e}");
        assert!(e * cos_a < 1e-13, "cos_a={cos_a}: {e:e}");
    }
    assert!(resolved >= 5);
}

#[test]
fn outside_the_band_errors_stay_below_1e12() {
    for cos_a in [0.05, -0.05, 0.2, 1.0, -1.0] {
        assert!(worst_error(cos_a).unwrap() < 1e-12, "cos_a={cos_a}");
    }
}
