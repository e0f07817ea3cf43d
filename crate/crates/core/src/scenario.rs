//! JSON scenario files, CSV output and the built-in figure presets.
//!
//! ```json
//! {
//!   "scheme": { "kind": "rotated", "unit": "deg",
//!               "a": { "theta": 0, "phi": 0 }, "b": { "theta": 45, "phi": 0 } },
//!   "bath": { "kind": "ohmic_family", "s": 1.0, "lambda": 1.0 },
//!   "temperature": { "beta_omega0": 0.1 },
//!   "ratio": { "omega0_over_omegac": 0.01 },
//!   "grid": { "t_max_omega_c": 1000, "n_points": 400, "spacing": "log", "t_min_omega_c": 0.01 }
//! }
//! ```
//!
//! Scheme kinds and the directions they need:
//! `selective` (`state`), `general` (`a`, `b1`, `b2`), `undisturbed` (`a`),
//! `rotated`, `collapsing`, `collapsing_antiphase` (`a`, `b`).
//! Angles are radians unless `"unit": "deg"`.
//!
//! `t_min_omega_c` defaults to `0` on a linear grid and to `t_max_omega_c·10⁻⁵`
//! on a log grid. `"include_origin": true` prepends a `t = 0` row (ignored when
//! the grid already starts there). Figure presets use 400 log-spaced points over
//! `ω_c t ∈ [10⁻², 10³]` plus the origin.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bath::{BathError, BathSpec};
use crate::bloch::BlochDirection;
use crate::dynamics::{
    coherence_trajectory, linear_grid, log_grid, DephasingTrajectory, DynamicsError, QubitParams,
};
use crate::preparation::PreparationScheme;

pub const CSV_HEADER: &str = "t_omega_c,gamma,gamma_cor,gamma_eff,phi,chi,re_sigma_plus,im_sigma_plus,reduced_coherence,bloch_v,purity,entropy";

/// A validation failure tied to a config field path such as `grid.n_points`.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config is not valid JSON for this schema: {0}")]
    Parse(String),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

impl ConfigError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Field {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("computation failed: {0}")]
    Computation(#[from] DynamicsError),
    #[error("unknown preset '{0}'; available: fig1, fig2, fig3, fig4, fig5")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleUnit {
    #[default]
    Rad,
    Deg,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AngleConfig {
    pub theta: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeKindConfig {
    Selective,
    General,
    Undisturbed,
    Rotated,
    Collapsing,
    CollapsingAntiphase,
}

impl SchemeKindConfig {
    fn name(self) -> &'static str {
        match self {
            SchemeKindConfig::Selective => "selective",
            SchemeKindConfig::General => "general",
            SchemeKindConfig::Undisturbed => "undisturbed",
            SchemeKindConfig::Rotated => "rotated",
            SchemeKindConfig::Collapsing => "collapsing",
            SchemeKindConfig::CollapsingAntiphase => "collapsing_antiphase",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfig {
    pub kind: SchemeKindConfig,
    #[serde(default)]
    pub unit: AngleUnit,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<AngleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<AngleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<AngleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<AngleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<AngleConfig>,
}

impl SchemeConfig {
    fn with(kind: SchemeKindConfig) -> Self {
        Self {
            kind,
            unit: AngleUnit::Rad,
            state: None,
            a: None,
            b: None,
            b1: None,
            b2: None,
        }
    }

    fn direction(&self, name: &str, value: Option<AngleConfig>) -> Result<BlochDirection, ConfigError> {
        let path = format!("scheme.{name}");
        let v = value.ok_or_else(|| {
            ConfigError::field(&path, format!("required for kind '{}'", self.kind.name()))
        })?;
        let scale = match self.unit {
            AngleUnit::Rad => 1.0,
            AngleUnit::Deg => std::f64::consts::PI / 180.0,
        };
        let (theta, phi) = (v.theta * scale, v.phi * scale);
        if !phi.is_finite() {
            return Err(ConfigError::field(format!("{path}.phi"), "must be finite"));
        }
        BlochDirection::new(theta, phi)
            .map_err(|e| ConfigError::field(format!("{path}.theta"), e.to_string()))
    }

    fn reject_extra(&self, allowed: &[&str]) -> Result<(), ConfigError> {
        let present = [
            ("state", self.state.is_some()),
            ("a", self.a.is_some()),
            ("b", self.b.is_some()),
            ("b1", self.b1.is_some()),
            ("b2", self.b2.is_some()),
        ];
        for (name, set) in present {
            if set && !allowed.contains(&name) {
                return Err(ConfigError::field(
                    format!("scheme.{name}"),
                    format!("not used by kind '{}'", self.kind.name()),
                ));
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<PreparationScheme, ConfigError> {
        use SchemeKindConfig::*;
        let allowed: &[&str] = match self.kind {
            Selective => &["state"],
            General => &["a", "b1", "b2"],
            Undisturbed => &["a"],
            Rotated | Collapsing | CollapsingAntiphase => &["a", "b"],
        };
        self.reject_extra(allowed)?;
        Ok(match self.kind {
            Selective => PreparationScheme::selective_along(&self.direction("state", self.state)?),
            General => PreparationScheme::general(
                self.direction("a", self.a)?,
                self.direction("b1", self.b1)?,
                self.direction("b2", self.b2)?,
            ),
            Undisturbed => PreparationScheme::undisturbed(self.direction("a", self.a)?),
            Rotated => PreparationScheme::rotated(self.direction("a", self.a)?, self.direction("b", self.b)?),
            Collapsing => {
                PreparationScheme::collapsing(self.direction("a", self.a)?, self.direction("b", self.b)?)
            }
            CollapsingAntiphase => PreparationScheme::collapsing_antiphase(
                self.direction("a", self.a)?,
                self.direction("b", self.b)?,
            ),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemperatureConfig {
    pub beta_omega0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioConfig {
    pub omega0_over_omegac: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub t_max_omega_c: f64,
    pub n_points: usize,
    pub spacing: Spacing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_min_omega_c: Option<f64>,
    /// Prepend `t = 0` to the grid (useful with log spacing).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub include_origin: bool,
}

impl GridConfig {
    pub fn build(&self) -> Result<Vec<f64>, ConfigError> {
        if self.n_points < 2 {
            return Err(ConfigError::field("grid.n_points", "must be at least 2"));
        }
        let t_max = self.t_max_omega_c;
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(ConfigError::field("grid.t_max_omega_c", "must be finite and > 0"));
        }
        let t_min = self.t_min_omega_c.unwrap_or(match self.spacing {
            Spacing::Linear => 0.0,
            Spacing::Log => t_max * 1e-5,
        });
        let lower_ok = match self.spacing {
            Spacing::Linear => t_min >= 0.0,
            Spacing::Log => t_min > 0.0,
        };
        if !(t_min.is_finite() && lower_ok && t_min < t_max) {
            let bound = match self.spacing {
                Spacing::Linear => ">= 0",
                Spacing::Log => "> 0 for log spacing",
            };
            return Err(ConfigError::field(
                "grid.t_min_omega_c",
                format!("must be finite, {bound}, and below t_max_omega_c"),
            ));
        }
        let mut grid = match self.spacing {
            Spacing::Linear => linear_grid(t_min, t_max, self.n_points),
            Spacing::Log => log_grid(t_min, t_max, self.n_points),
        };
        if self.include_origin && grid[0] > 0.0 {
            grid.insert(0, 0.0);
        }
        Ok(grid)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scheme: SchemeConfig,
    pub bath: BathSpec,
    pub temperature: TemperatureConfig,
    pub ratio: RatioConfig,
    pub grid: GridConfig,
}

/// A validated scenario, ready to run.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub scheme: PreparationScheme,
    pub bath: BathSpec,
    pub params: QubitParams,
    pub grid: Vec<f64>,
}

impl Scenario {
    pub fn run(&self) -> Result<DephasingTrajectory, DynamicsError> {
        coherence_trajectory(&self.scheme, &self.bath, &self.params, &self.grid)
    }
}

fn bath_field(e: &BathError) -> ConfigError {
    let field = match e {
        BathError::InvalidExponent(_) => "bath.s".to_string(),
        BathError::InvalidCoupling(_) => "bath.lambda".to_string(),
        BathError::InvalidModeFrequency { index, .. } => format!("bath.modes[{index}].omega"),
        BathError::InvalidModeCoupling { index, .. } => format!("bath.modes[{index}].g2"),
        BathError::InvalidTemperature(_) => "temperature.beta_omega0".to_string(),
        BathError::InvalidRatio(_) => "ratio.omega0_over_omegac".to_string(),
    };
    ConfigError::field(field, e.to_string())
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    /// Canonical pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self::from_json(&text)?)
    }

    /// Checks every field before anything is computed.
    pub fn build(&self) -> Result<Scenario, ConfigError> {
        let b = self.temperature.beta_omega0;
        if !(b.is_finite() && b > 0.0) {
            return Err(ConfigError::field("temperature.beta_omega0", "must be finite and > 0"));
        }
        let r = self.ratio.omega0_over_omegac;
        if !(r.is_finite() && r > 0.0) {
            return Err(ConfigError::field("ratio.omega0_over_omegac", "must be finite and > 0"));
        }
        self.bath.validate().map_err(|e| bath_field(&e))?;
        let scheme = self.scheme.build()?;
        let grid = self.grid.build()?;
        let params = QubitParams::new(b, r).map_err(|e| ConfigError::field("temperature", e.to_string()))?;
        Ok(Scenario {
            scheme,
            bath: self.bath.clone(),
            params,
            grid,
        })
    }
}

fn cell(out: &mut String, v: Option<f64>) {
    if let Some(x) = v {
        // Adding +0 turns -0 into +0.
        write!(out, "{:.16e}", x + 0.0).expect("write to string");
    }
}

/// Writes a trajectory as CSV with [`CSV_HEADER`]; undefined values are empty cells.
pub fn write_csv<W: Write>(traj: &DephasingTrajectory, mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let mut line = String::new();
    for p in &traj.points {
        line.clear();
        let cells = [
            Some(p.t),
            Some(p.gamma),
            p.gamma_cor,
            p.gamma_eff,
            Some(p.phi),
            p.chi,
            Some(p.coherence_plus.re),
            Some(p.coherence_plus.im),
            p.reduced_coherence,
            Some(p.bloch_v),
            Some(p.purity),
            Some(p.entropy),
        ];
        for (k, c) in cells.into_iter().enumerate() {
            if k > 0 {
                line.push(',');
            }
            cell(&mut line, c);
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Loads `config`, runs it and writes the CSV to `out`.
pub fn run_trace(config: &Path, out: &Path) -> Result<DephasingTrajectory, ScenarioError> {
    let scenario = ScenarioConfig::load(config)?.build()?;
    let traj = scenario.run()?;
    write_file(out, &traj)?;
    Ok(traj)
}

fn write_file(path: &Path, traj: &DephasingTrajectory) -> Result<(), ScenarioError> {
    let io_err = |source| ScenarioError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    let mut w = io::BufWriter::new(file);
    write_csv(traj, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigurePreset {
    /// Reduced coherence of the rotated scheme for several couplings.
    Fig1,
    /// Entropy versus coupling, rotated and antiphase-collapsing schemes.
    Fig2,
    /// Purity versus coupling; same curves as `Fig2`.
    Fig3,
    /// Entropy versus temperature at strong coupling.
    Fig4,
    /// Purity versus temperature; same curves as `Fig4`.
    Fig5,
}

pub const DEFAULT_FIGURE_GRID: GridConfig = GridConfig {
    t_max_omega_c: 1e3,
    n_points: 400,
    spacing: Spacing::Log,
    t_min_omega_c: Some(1e-2),
    include_origin: true,
};

fn angle(theta: f64, phi: f64) -> Option<AngleConfig> {
    Some(AngleConfig { theta, phi })
}

fn ohmic_curve(scheme: SchemeConfig, lambda: f64, beta_omega0: f64, ratio: f64) -> ScenarioConfig {
    ScenarioConfig {
        scheme,
        bath: BathSpec::OhmicFamily { s: 1.0, lambda },
        temperature: TemperatureConfig { beta_omega0 },
        ratio: RatioConfig {
            omega0_over_omegac: ratio,
        },
        grid: DEFAULT_FIGURE_GRID,
    }
}

/// The two schemes compared in the purity and entropy figures: measured along
/// the north pole, first outcome sent to polar angle `π/4`.
fn purity_figure_schemes() -> [(&'static str, SchemeConfig); 2] {
    let mut rotated = SchemeConfig::with(SchemeKindConfig::Rotated);
    rotated.a = angle(0.0, 0.0);
    rotated.b = angle(std::f64::consts::FRAC_PI_4, 0.0);
    let mut antiphase = SchemeConfig::with(SchemeKindConfig::CollapsingAntiphase);
    antiphase.a = angle(0.0, 0.0);
    antiphase.b = angle(std::f64::consts::FRAC_PI_4, 0.0);
    [("rotated", rotated), ("antiphase", antiphase)]
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 5] = [
        FigurePreset::Fig1,
        FigurePreset::Fig2,
        FigurePreset::Fig3,
        FigurePreset::Fig4,
        FigurePreset::Fig5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::Fig1 => "fig1",
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5 => "fig5",
        }
    }

    pub fn from_name(name: &str) -> Result<Self, ScenarioError> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| ScenarioError::UnknownPreset(name.to_string()))
    }

    /// Curve labels and their configs, in a fixed order.
    pub fn curves(self) -> Vec<(String, ScenarioConfig)> {
        match self {
            FigurePreset::Fig1 => {
                let mut scheme = SchemeConfig::with(SchemeKindConfig::Rotated);
                scheme.a = angle(0.0, 0.0);
                scheme.b = angle(std::f64::consts::FRAC_PI_4, 0.0);
                [0.5, 1.0, 2.0]
                    .into_iter()
                    .map(|l| (format!("lambda_{l}"), ohmic_curve(scheme.clone(), l, 0.1, 0.01)))
                    .collect()
            }
            FigurePreset::Fig2 | FigurePreset::Fig3 => {
                let mut out = Vec::new();
                for (name, scheme) in purity_figure_schemes() {
                    for l in [2.0, 4.0, 6.0] {
                        out.push((format!("{name}_lambda_{l}"), ohmic_curve(scheme.clone(), l, 1.0, 0.1)));
                    }
                }
                out
            }
            FigurePreset::Fig4 | FigurePreset::Fig5 => {
                let mut out = Vec::new();
                for (name, scheme) in purity_figure_schemes() {
                    for b in [0.01, 0.1, 1.0] {
                        out.push((format!("{name}_bw0_{b}"), ohmic_curve(scheme.clone(), 6.0, b, 0.1)));
                    }
                }
                out
            }
        }
    }

    /// All curve configs as one JSON object keyed by label.
    pub fn dump_config(self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .curves()
            .into_iter()
            .map(|(label, cfg)| (label, serde_json::to_value(cfg).expect("config serializes")))
            .collect();
        serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("map serializes")
    }
}

/// Computes every curve of `preset` and writes `<preset>_<label>.csv` into `out_dir`.
pub fn run_figure(preset: FigurePreset, out_dir: &Path) -> Result<Vec<PathBuf>, ScenarioError> {
    std::fs::create_dir_all(out_dir).map_err(|source| ScenarioError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();
    for (label, cfg) in preset.curves() {
        let traj = cfg.build()?.run()?;
        let path = out_dir.join(format!("{}_{label}.csv", preset.name()));
        write_file(&path, &traj)?;
        written.push(path);
    }
    Ok(written)
}
