//! Spectral densities and the two bath functions that drive dephasing.
//!
//! All frequencies are in units of the cutoff `ω_c` and all times in `1/ω_c`.
//!
//! ```text
//! γ(t) = ∫₀^∞ dω J(ω) coth(βω/2) (1 − cos ωt) / ω²
//! Φ(t) = ∫₀^∞ dω J(ω) sin(ωt) / ω²
//! J(ω) = λ ωˢ e^{−ω}
//! ```
//!
//! A discrete bath replaces `∫dω J(ω)(…)` by `Σ_k 4|g_k|²(…)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::{integrate_with_breaks, QuadratureError, QuadratureOptions};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BathError {
    #[error("spectral exponent s must be finite and > 0, got {0}")]
    InvalidExponent(f64),
    #[error("coupling lambda must be finite and >= 0, got {0}")]
    InvalidCoupling(f64),
    #[error("mode {index}: frequency must be finite and > 0, got {omega}")]
    InvalidModeFrequency { index: usize, omega: f64 },
    #[error("mode {index}: |g|^2 must be finite and >= 0, got {g2}")]
    InvalidModeCoupling { index: usize, g2: f64 },
    #[error("inverse temperature must be finite and > 0, got {0}")]
    InvalidTemperature(f64),
    #[error("frequency ratio omega0/omega_c must be finite and > 0, got {0}")]
    InvalidRatio(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("time must be finite and >= 0, got {0}")]
    InvalidTime(f64),
    #[error("t = {0} exceeds the quadrature range (t <= {MAX_QUADRATURE_TIME:e} in units of 1/omega_c)")]
    TimeOutOfRange(f64),
    #[error("quadrature failed at t = {t}: {source}")]
    Quadrature {
        t: f64,
        #[source]
        source: QuadratureError,
    },
}

/// One discrete bath mode: frequency `ω_k` and squared coupling `|g_k|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscreteMode {
    pub omega: f64,
    pub g2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BathSpec {
    /// `J(ω) = λ ωˢ e^{−ω}`.
    OhmicFamily { s: f64, lambda: f64 },
    Discrete { modes: Vec<DiscreteMode> },
}

impl BathSpec {
    pub fn ohmic(lambda: f64) -> Result<Self, BathError> {
        Self::ohmic_family(1.0, lambda)
    }

    pub fn ohmic_family(s: f64, lambda: f64) -> Result<Self, BathError> {
        let b = BathSpec::OhmicFamily { s, lambda };
        b.validate()?;
        Ok(b)
    }

    pub fn discrete(modes: Vec<DiscreteMode>) -> Result<Self, BathError> {
        let b = BathSpec::Discrete { modes };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), BathError> {
        match self {
            BathSpec::OhmicFamily { s, lambda } => {
                if !(s.is_finite() && *s > 0.0) {
                    return Err(BathError::InvalidExponent(*s));
                }
                if !(lambda.is_finite() && *lambda >= 0.0) {
                    return Err(BathError::InvalidCoupling(*lambda));
                }
            }
            BathSpec::Discrete { modes } => {
                for (index, m) in modes.iter().enumerate() {
                    if !(m.omega.is_finite() && m.omega > 0.0) {
                        return Err(BathError::InvalidModeFrequency { index, omega: m.omega });
                    }
                    if !(m.g2.is_finite() && m.g2 >= 0.0) {
                        return Err(BathError::InvalidModeCoupling { index, g2: m.g2 });
                    }
                }
            }
        }
        Ok(())
    }

    /// `J(ω)` for the continuum family; `None` for a discrete bath.
    pub fn spectral_density(&self, omega: f64) -> Option<f64> {
        match self {
            BathSpec::OhmicFamily { s, lambda } => Some(lambda * omega.powf(*s) * (-omega).exp()),
            BathSpec::Discrete { .. } => None,
        }
    }
}

/// Inverse temperature in cutoff units, `βω_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalContext {
    beta_omega_c: f64,
}

impl ThermalContext {
    pub fn new(beta_omega_c: f64) -> Result<Self, BathError> {
        if beta_omega_c.is_finite() && beta_omega_c > 0.0 {
            Ok(Self { beta_omega_c })
        } else {
            Err(BathError::InvalidTemperature(beta_omega_c))
        }
    }

    /// `βω_c = βω₀ / (ω₀/ω_c)`.
    pub fn from_qubit(beta_omega0: f64, omega0_over_omegac: f64) -> Result<Self, BathError> {
        if !(omega0_over_omegac.is_finite() && omega0_over_omegac > 0.0) {
            return Err(BathError::InvalidRatio(omega0_over_omegac));
        }
        if !(beta_omega0.is_finite() && beta_omega0 > 0.0) {
            return Err(BathError::InvalidTemperature(beta_omega0));
        }
        Self::new(beta_omega0 / omega0_over_omegac)
    }

    pub fn beta_omega_c(&self) -> f64 {
        self.beta_omega_c
    }
}

/// `coth x` for `x > 0`, with a series below `1e−4`.
pub(crate) fn coth(x: f64) -> f64 {
    if x < 1e-4 {
        1.0 / x + x / 3.0 - x * x * x / 45.0
    } else {
        1.0 / x.tanh()
    }
}

/// `(1 − cos x)` without cancellation.
fn one_minus_cos(x: f64) -> f64 {
    let h = (0.5 * x).sin();
    2.0 * h * h
}

fn check_time(t: f64) -> Result<(), KernelError> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(KernelError::InvalidTime(t))
    }
}

/// Decoherence function `γ(t)`.
pub fn gamma_dynamical(bath: &BathSpec, th: &ThermalContext, t: f64) -> Result<f64, KernelError> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    match bath {
        BathSpec::Discrete { modes } => Ok(modes
            .iter()
            .map(|m| {
                4.0 * m.g2 * coth(0.5 * th.beta_omega_c * m.omega) * one_minus_cos(m.omega * t)
                    / (m.omega * m.omega)
            })
            .sum()),
        BathSpec::OhmicFamily { s, lambda } => gamma_quadrature(*s, *lambda, th, t),
    }
}

/// Correlation phase `Φ(t)`. The Ohmic case `s = 1` uses `λ·arctan t`.
pub fn phi_correlation(bath: &BathSpec, t: f64) -> Result<f64, KernelError> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    match bath {
        BathSpec::Discrete { modes } => Ok(modes
            .iter()
            .map(|m| 4.0 * m.g2 * (m.omega * t).sin() / (m.omega * m.omega))
            .sum()),
        BathSpec::OhmicFamily { s, lambda } if *s == 1.0 => Ok(lambda * t.atan()),
        BathSpec::OhmicFamily { s, lambda } => phi_quadrature(*s, *lambda, t),
    }
}

/// Zero-temperature Ohmic decoherence function, `(λ/2)·ln(1 + t²)`.
pub fn gamma_ohmic_zero_temperature(lambda: f64, t: f64) -> f64 {
    0.5 * lambda * (t * t).ln_1p()
}

/// Largest `ω_c t` accepted by the quadrature kernels; beyond it the number of
/// starting panels (about `25·t`) gets out of hand.
pub const MAX_QUADRATURE_TIME: f64 = 1e5;

fn upper_limit(s: f64) -> f64 {
    40.0_f64.max(10.0 * s)
}

/// Quadrature of `λ ∫₀^W ω^{s−1} L(ω) dω`, with `L` regular at the origin.
///
/// For `s < 1` the substitution `ω = u^{1/s}` turns the integrand into
/// `(λ/s)·L(u^{1/s})`. For `t > 10`, starting panels are no wider than a
/// quarter period of the oscillating factor.
fn family_integral<L: Fn(f64) -> f64>(
    s: f64,
    lambda: f64,
    t: f64,
    regular: L,
) -> Result<f64, KernelError> {
    if t > MAX_QUADRATURE_TIME {
        return Err(KernelError::TimeOutOfRange(t));
    }
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let w = upper_limit(s);
    let mut breaks = vec![0.0];
    if t > 10.0 {
        let quarter = 0.5 * PI / t;
        let n = (w / quarter).ceil() as usize;
        breaks.extend((1..n).map(|k| k as f64 * quarter));
    }
    breaks.push(w);

    let opts = QuadratureOptions {
        max_panels: breaks.len() + 20_000,
        ..Default::default()
    };
    let result = if s < 1.0 {
        let inv = 1.0 / s;
        let mapped: Vec<f64> = breaks.iter().map(|x| x.powf(s)).collect();
        integrate_with_breaks(|u| regular(u.powf(inv)), &mapped, &opts)
            .map(|r| r.value * lambda / s)
    } else {
        integrate_with_breaks(
            |x| {
                let weight = if s == 1.0 { 1.0 } else { x.powf(s - 1.0) };
                weight * regular(x)
            },
            &breaks,
            &opts,
        )
        .map(|r| r.value * lambda)
    };
    result.map_err(|source| KernelError::Quadrature { t, source })
}

/// `γ(t)` for the Ohmic family by adaptive quadrature, whatever the exponent.
pub fn gamma_quadrature(s: f64, lambda: f64, th: &ThermalContext, t: f64) -> Result<f64, KernelError> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let beta = th.beta_omega_c;
    family_integral(s, lambda, t, |w| {
        if w == 0.0 {
            return t * t / beta;
        }
        let x = 0.5 * beta * w;
        // ω·coth(βω/2) stays finite as ω → 0.
        let w_coth = if x < 1e-4 { w * coth(x) } else { w / x.tanh() };
        let q = (0.5 * w * t).sin() / w;
        w_coth * (-w).exp() * 2.0 * q * q
    })
}

/// `Φ(t)` for the Ohmic family by adaptive quadrature, whatever the exponent.
pub fn phi_quadrature(s: f64, lambda: f64, t: f64) -> Result<f64, KernelError> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    family_integral(s, lambda, t, |w| {
        if w == 0.0 {
            return t;
        }
        (-w).exp() * (w * t).sin() / w
    })
}
