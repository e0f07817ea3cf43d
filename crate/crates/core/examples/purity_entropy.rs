//! Purity and entropy of the qubit after the rotated and antiphase-collapsing
//! preparations, for several couplings and temperatures.
//!
//! cargo run --release --example purity_entropy

use std::f64::consts::FRAC_PI_4;

use qubit_dephasing::dynamics::log_grid;
use qubit_dephasing::{coherence_trajectory, BathSpec, BlochDirection, PreparationScheme, QubitParams};

fn main() {
    let a = BlochDirection::north();
    let b = BlochDirection::new(FRAC_PI_4, 0.0).unwrap();
    let schemes = [
        ("rotated", PreparationScheme::rotated(a, b)),
        ("antiphase", PreparationScheme::collapsing_antiphase(a, b)),
    ];
    let grid = log_grid(1e-2, 1e3, 400);

    println!("beta*omega0 = 1, omega0/omega_c = 0.1");
    for (name, s) in &schemes {
        for lambda in [2.0, 4.0, 6.0] {
            let params = QubitParams::new(1.0, 0.1).unwrap();
            let traj = coherence_trajectory(s, &BathSpec::ohmic(lambda).unwrap(), &params, &grid).unwrap();
            let (t, p) = traj.max_purity();
            let s_min = traj.points.iter().map(|x| x.entropy).fold(f64::INFINITY, f64::min);
            println!("  {name:<9} lambda = {lambda}: max purity {p:.4} at t = {t:.3}, min entropy {s_min:.4}");
        }
    }

    println!("lambda = 6, omega0/omega_c = 0.1");
    for (name, s) in &schemes {
        for bw in [0.01, 0.1, 1.0] {
            let params = QubitParams::new(bw, 0.1).unwrap();
            let traj = coherence_trajectory(s, &BathSpec::ohmic(6.0).unwrap(), &params, &grid).unwrap();
            let (t, p) = traj.max_purity();
            println!("  {name:<9} beta*omega0 = {bw}: max purity {p:.4} at t = {t:.3}");
        }
    }
}
