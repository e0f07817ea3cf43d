//! Directions on the Bloch sphere, their states, and the unitaries between them.
//!
//! cargo run --example bloch_geometry

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

use qubit_dephasing::bloch::{relative_unitary, QubitOperator};
use qubit_dephasing::BlochDirection;

fn main() {
    let a = BlochDirection::new(FRAC_PI_3, 0.5).unwrap();
    let b = BlochDirection::new(FRAC_PI_4, -1.0).unwrap();
    let minus_a = a.antipodal();

    println!("a  = {a}, cartesian {:?}", a.cartesian());
    println!("-a = {minus_a}");
    let psi = a.state();
    println!("|a> = ({:.6}, {:.6})  [basis |1>, |0>]", psi.c1(), psi.c0());

    let completeness = a.state().projector() + minus_a.state().projector();
    println!(
        "| |a><a| + |-a><-a| - I |max = {:.1e}",
        completeness.max_abs_diff(&QubitOperator::identity())
    );

    let sigma_a = a.spin_component();
    println!("<a|sigma(a)|a> = {:.6}", psi.expectation(&sigma_a));

    let u = relative_unitary(&b, &a);
    let moved = u.apply(&psi);
    println!(
        "U(b,a)|a> vs |b>: overlap |<b|U|a>| = {:.15}, unitarity residual {:.1e}",
        b.state().inner(&moved).norm(),
        u.unitarity_residual()
    );
}
