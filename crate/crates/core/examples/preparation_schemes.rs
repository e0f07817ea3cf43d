//! Measurement schemes: Kraus operators, initial qubit averages and the
//! coherence-enhancement predicate.
//!
//! cargo run --example preparation_schemes

use std::f64::consts::FRAC_PI_4;

use qubit_dephasing::{BlochDirection, PreparationScheme};

fn main() {
    let a = BlochDirection::north();
    let b = BlochDirection::new(FRAC_PI_4, 0.0).unwrap();
    let beta_omega0 = 1.0;

    let schemes = [
        ("selective along b", PreparationScheme::selective_along(&b)),
        ("undisturbed", PreparationScheme::undisturbed(a)),
        ("rotated", PreparationScheme::rotated(a, b)),
        ("collapsing", PreparationScheme::collapsing(a, b)),
        ("collapsing antiphase", PreparationScheme::collapsing_antiphase(a, b)),
    ];

    println!("beta*omega0 = {beta_omega0}");
    println!("{:<22} {:>22} {:>10} {:>8} {:>11}", "scheme", "<sigma+>", "<sigma_z>", "|v(0)|", "enhancing");
    for (name, s) in &schemes {
        let avg = s.initial_averages(beta_omega0).unwrap();
        let enhancing = match s.enhancement_predicate(beta_omega0) {
            Ok(true) => "yes",
            Ok(false) => "no",
            Err(_) => "n/a",
        };
        println!(
            "{name:<22} {:>22} {:>10.6} {:>8.5} {:>11}",
            format!("{:.5}", avg.sigma_plus),
            avg.sigma_z,
            avg.bloch_magnitude(),
            enhancing
        );
    }

    let rotated = &schemes[2].1;
    for (k, o) in rotated.operators().iter().enumerate() {
        let m = o.omega.entries();
        println!(
            "rotated outcome {k}: Omega = [[{:.4}, {:.4}], [{:.4}, {:.4}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        );
    }
    println!("dual of the rotated scheme: {:?}", rotated.dual().map(|d| d.kind()));
}
