//! Reduced coherence exp(-gamma - gamma_cor) after the rotated preparation:
//! pre-measurement correlations push it well above 1 at high temperature.
//!
//! cargo run --release --example coherence_enhancement

use std::f64::consts::FRAC_PI_4;

use qubit_dephasing::dynamics::log_grid;
use qubit_dephasing::{coherence_trajectory, BathSpec, BlochDirection, PreparationScheme, QubitParams};

fn main() {
    let scheme = PreparationScheme::rotated(BlochDirection::north(), BlochDirection::new(FRAC_PI_4, 0.0).unwrap());
    let params = QubitParams::new(0.1, 0.01).unwrap();
    let grid = log_grid(1e-2, 1e3, 200);

    for lambda in [0.5, 1.0, 2.0] {
        let bath = BathSpec::ohmic(lambda).unwrap();
        let traj = coherence_trajectory(&scheme, &bath, &params, &grid).unwrap();
        let (t, peak) = traj.max_reduced_coherence().unwrap();
        let last = traj.points.last().unwrap();
        println!(
            "lambda = {lambda}: peak reduced coherence {peak:.3} at omega_c t = {t:.3}; at t = {:.0}: {:.2e}",
            last.t,
            last.reduced_coherence.unwrap()
        );
    }

    let bath = BathSpec::ohmic(1.0).unwrap();
    let traj = coherence_trajectory(&scheme, &bath, &params, &log_grid(1e-2, 1e2, 12)).unwrap();
    println!("\n{:>10} {:>10} {:>10} {:>10} {:>10} {:>10}", "t", "gamma", "gamma_cor", "chi", "|sigma+|", "v");
    for p in &traj.points {
        println!(
            "{:>10.4} {:>10.5} {:>10.5} {:>10.5} {:>10.6} {:>10.6}",
            p.t,
            p.gamma,
            p.gamma_cor.unwrap(),
            p.chi.unwrap(),
            p.coherence_plus.norm(),
            p.bloch_v
        );
    }
}
