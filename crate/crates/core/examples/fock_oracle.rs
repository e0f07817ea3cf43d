//! Closed-form coherence against brute-force evolution in a truncated Fock space.
//!
//! cargo run --release --example fock_oracle

use std::f64::consts::FRAC_PI_3;

use qubit_dephasing::dynamics::linear_grid;
use qubit_dephasing::fock::{apply_preparation, build_equilibrium, CoherenceProbe};
use qubit_dephasing::{coherence_trajectory, BlochDirection, FockMode, FockSystem, PreparationScheme, QubitParams};

fn main() {
    let omega0 = 0.25;
    let beta_omega0 = 1.0;
    let fs = FockSystem::new(omega0, vec![FockMode::new(1.0, 0.15), FockMode::new(1.7, 0.2)]).unwrap();
    println!("bath dimension {}, qubit+bath dimension {}", fs.bath_dim(), 2 * fs.bath_dim());

    let a = BlochDirection::new(FRAC_PI_3, 0.3).unwrap();
    let b = BlochDirection::new(1.2, -0.7).unwrap();
    let scheme = PreparationScheme::rotated(a, b);

    let beta = beta_omega0 / omega0;
    let rho = apply_preparation(&build_equilibrium(&fs, beta).unwrap(), &scheme).unwrap();
    println!("prepared state: trace {:.3e} off 1, min eigenvalue {:.2e}", (rho.trace().re - 1.0).abs(), rho.min_eigenvalue());
    let probe = CoherenceProbe::new(&fs, &rho);

    let grid = linear_grid(0.0, 5.0, 11);
    let params = QubitParams::new(beta_omega0, omega0).unwrap();
    let traj = coherence_trajectory(&scheme, &fs.bath_spec(), &params, &grid).unwrap();
    println!("{:>6} {:>36} {:>36} {:>10}", "t", "closed form", "Fock space", "rel err");
    for p in &traj.points {
        let exact = probe.at(p.t);
        println!(
            "{:>6.2} {:>36} {:>36} {:>10.2e}",
            p.t,
            format!("{:.12}", p.coherence_plus),
            format!("{:.12}", exact),
            (p.coherence_plus - exact).norm() / exact.norm()
        );
    }
}
