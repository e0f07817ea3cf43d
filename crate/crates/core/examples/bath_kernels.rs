//! Decoherence function and correlation phase for Ohmic-family and discrete baths.
//!
//! cargo run --release --example bath_kernels

use qubit_dephasing::bath::{
    gamma_dynamical, gamma_ohmic_zero_temperature, phi_correlation, phi_quadrature, DiscreteMode,
};
use qubit_dephasing::{BathSpec, ThermalContext};

fn main() {
    let ohmic = BathSpec::ohmic(1.0).unwrap();
    let sub = BathSpec::ohmic_family(0.5, 1.0).unwrap();
    let two_modes = BathSpec::discrete(vec![
        DiscreteMode { omega: 1.0, g2: 0.0225 },
        DiscreteMode { omega: 1.7, g2: 0.04 },
    ])
    .unwrap();
    let cold = ThermalContext::new(1e12).unwrap();
    let warm = ThermalContext::from_qubit(0.1, 0.01).unwrap();
    println!("beta*omega_c for beta*omega0 = 0.1, omega0/omega_c = 0.01: {}", warm.beta_omega_c());

    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "t", "gamma(T=0)", "(l/2)ln(1+t2)", "gamma(warm)", "Phi", "Phi s=1/2", "gamma 2-mode"
    );
    for t in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
        println!(
            "{t:>8} {:>12.8} {:>12.8} {:>12.6} {:>12.8} {:>12.8} {:>12.8}",
            gamma_dynamical(&ohmic, &cold, t).unwrap(),
            gamma_ohmic_zero_temperature(1.0, t),
            gamma_dynamical(&ohmic, &warm, t).unwrap(),
            phi_correlation(&ohmic, t).unwrap(),
            phi_correlation(&sub, t).unwrap(),
            gamma_dynamical(&two_modes, &warm, t).unwrap(),
        );
    }
    let t = 3.0;
    println!(
        "Ohmic Phi at t = {t}: quadrature {:.12}, arctan {:.12}",
        phi_quadrature(1.0, 1.0, t).unwrap(),
        t.atan()
    );
}
