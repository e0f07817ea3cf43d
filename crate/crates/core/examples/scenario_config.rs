//! Building a scenario from JSON, writing its CSV, and inspecting a figure preset.
//!
//! cargo run --release --example scenario_config

use qubit_dephasing::scenario::write_csv;
use qubit_dephasing::{FigurePreset, ScenarioConfig};

const CONFIG: &str = r#"{
    "scheme": { "kind": "collapsing_antiphase", "unit": "deg",
                "a": { "theta": 0, "phi": 0 }, "b": { "theta": 45, "phi": 0 } },
    "bath": { "kind": "ohmic_family", "s": 1.0, "lambda": 4.0 },
    "temperature": { "beta_omega0": 1.0 },
    "ratio": { "omega0_over_omegac": 0.1 },
    "grid": { "t_max_omega_c": 2, "n_points": 5, "spacing": "linear" }
}"#;

fn main() {
    let cfg = ScenarioConfig::from_json(CONFIG).unwrap();
    println!("canonical form:\n{}", cfg.to_json());

    let traj = cfg.build().unwrap().run().unwrap();
    let mut out = Vec::new();
    write_csv(&traj, &mut out).unwrap();
    println!("\n{}", String::from_utf8(out).unwrap());

    let bad = CONFIG.replace(r#""lambda": 4.0"#, r#""lambda": -4.0"#);
    println!("invalid config: {}", ScenarioConfig::from_json(&bad).unwrap().build().unwrap_err());

    for preset in FigurePreset::ALL {
        let labels: Vec<_> = preset.curves().into_iter().map(|(l, _)| l).collect();
        println!("{}: {}", preset.name(), labels.join(", "));
    }
}
