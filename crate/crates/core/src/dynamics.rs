//! Time-dependent qubit observables.
//!
//! The populations never change. The coherence evolves as
//!
//! ```text
//! ⟨σ₊(t)⟩ = ⟨σ₊⟩ · e^{i(ω₀t + χ(t))} · e^{−γ(t) − γ_cor(t)}
//! ```
//!
//! where `γ` comes from the bath alone and `γ_cor`, `χ` carry the qubit-bath
//! correlations present before the preparation. Both are functions of the
//! correlation phase `Φ(t)` and of three scheme constants `N₁`, `N₂`, `D`:
//!
//! ```text
//! e^{−γ_cor + iχ} = cos Φ + (N₂/D) sin Φ + i (N₁/D) sin Φ
//! ```

use std::f64::consts::{LN_2, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::bath::{gamma_dynamical, phi_correlation, BathError, BathSpec, KernelError, ThermalContext};
use crate::bloch::ALGEBRA_TOL;
use crate::preparation::{
    check_beta_omega0, sector_weights, InitialAverages, NonSelectiveScheme, PreparationError,
    PreparationScheme, SchemeVariant,
};

/// Slack allowed above `v = 1` before a Bloch length is rejected.
pub const BLOCH_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("scheme has zero initial coherence; correlation terms are undefined")]
    DegenerateScheme,
    #[error("logarithm argument {argument:e} is not positive at phi = {phi}")]
    NonPositiveLogArgument { argument: f64, phi: f64 },
    #[error("Bloch length {0} outside [0, 1]")]
    InvalidBlochLength(f64),
    #[error("sigma_z {0} outside [-1, 1]")]
    InvalidSigmaZ(f64),
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
    #[error(transparent)]
    Preparation(#[from] PreparationError),
    #[error(transparent)]
    Bath(#[from] BathError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// The three constants `N₁`, `N₂`, `D` of a preparation scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeKernelParams {
    pub n1: f64,
    pub n2: f64,
    pub d: f64,
}

impl SchemeKernelParams {
    /// Evaluates the constants through the sector amplitudes.
    ///
    /// With `z₊ = u₁A + u₂B` and `z₋ = u₁A′ + u₂B′` (`u₁ = sin θ₁`,
    /// `u₂ = e^{−iΔφ} sin θ₂`, `A, B, A′, B′` the hyperbolic weights of the
    /// two outcomes), `D = |z₊|²` and `N₁ − iN₂ = z₋ z̄₊`.
    pub fn new(s: &NonSelectiveScheme, beta_omega0: f64) -> Self {
        let ca = s.a.theta().cos();
        let h = 0.5 * beta_omega0;
        let (sh, ch) = (h.sinh(), h.cosh());
        let (w1, w2) = sector_weights(ca, beta_omega0);
        let (v1, v2) = (sh - ca * ch, sh + ca * ch);
        let u1 = Complex64::new(s.b1.theta().sin(), 0.0);
        let u2 = Complex64::from_polar(s.b2.theta().sin(), -s.delta_phi());
        let zp = u1 * w1 + u2 * w2;
        let zm = u1 * v1 + u2 * v2;
        let cross = zm * zp.conj();
        Self {
            n1: cross.re,
            n2: -cross.im,
            d: zp.norm_sqr(),
        }
    }

    /// Evaluates the constants from their expanded trigonometric form.
    ///
    /// Algebraically identical to [`SchemeKernelParams::new`]; kept as an
    /// independent route for cross-checks.
    pub fn expanded(s: &NonSelectiveScheme, beta_omega0: f64) -> Self {
        let x = beta_omega0;
        let (ep, em) = (x.exp(), (-x).exp());
        let half = 0.5 * s.a.theta();
        let s4 = half.sin().powi(4);
        let c4 = half.cos().powi(4);
        let sa2 = s.a.theta().sin().powi(2);
        let ca = s.a.theta().cos();
        let (s1, s2) = (s.b1.theta().sin(), s.b2.theta().sin());
        let (cd, sd) = (s.delta_phi().cos(), s.delta_phi().sin());
        let n1 = (ep * s4 - em * c4) * s1 * s1
            + (ep * c4 - em * s4) * s2 * s2
            + x.sinh() * sa2 * cd * s1 * s2;
        let n2 = 2.0 * ca * sd * s1 * s2;
        let d = (0.5 * sa2 + ep * s4 + em * c4) * s1 * s1
            + (0.5 * sa2 + ep * c4 + em * s4) * s2 * s2
            + (x.cosh() * sa2 + 2.0 * (s4 + c4)) * cd * s1 * s2;
        Self { n1, n2, d }
    }

    /// Constants of a selective preparation with population difference `σ_z`.
    pub fn selective(sigma_z: f64, beta_omega0: f64) -> Self {
        let h = 0.5 * beta_omega0;
        let (sh, ch) = (h.sinh(), h.cosh());
        Self {
            n1: sh - sigma_z * ch,
            n2: 0.0,
            d: ch - sigma_z * sh,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.d.abs() < ALGEBRA_TOL && self.n1.abs() < ALGEBRA_TOL && self.n2.abs() < ALGEBRA_TOL
    }

    /// `e^{−γ_cor + iχ}` at correlation phase `Φ`, unnormalized by `D`.
    fn factor(&self, phi: f64) -> (f64, f64) {
        let (sp, cp) = phi.sin_cos();
        (self.d * cp + self.n2 * sp, self.n1 * sp)
    }
}

/// `N₁`, `N₂`, `D` for a non-selective scheme.
pub fn scheme_kernel_params(
    s: &PreparationScheme,
    beta_omega0: f64,
) -> Result<SchemeKernelParams, DynamicsError> {
    check_beta_omega0(beta_omega0)?;
    let ns = s.non_selective().ok_or(PreparationError::SelectiveScheme)?;
    Ok(SchemeKernelParams::new(ns, beta_omega0))
}

/// Correlation decoherence `γ_cor` at correlation phase `Φ`.
///
/// The logarithm argument `1 + ((N₁²+N₂²)/D² − 1) sin²Φ + (N₂/D) sin 2Φ` is
/// evaluated as the sum of squares `(cos Φ + (N₂/D) sin Φ)² + ((N₁/D) sin Φ)²`.
pub fn gamma_cor_general(p: &SchemeKernelParams, phi: f64) -> Result<f64, DynamicsError> {
    if p.is_degenerate() {
        return Err(DynamicsError::DegenerateScheme);
    }
    let (re, im) = p.factor(phi);
    let argument = (re / p.d).powi(2) + (im / p.d).powi(2);
    if !(argument.is_finite() && argument > 0.0) {
        return Err(DynamicsError::NonPositiveLogArgument { argument, phi });
    }
    Ok(-0.5 * argument.ln())
}

/// `γ_cor` of the rotated scheme (`b₂ = −b₁`): `−½ ln[1 + sin²Φ / sinh²(βω₀/2)]`.
pub fn gamma_cor_rotated(beta_omega0: f64, phi: f64) -> Result<f64, DynamicsError> {
    check_beta_omega0(beta_omega0)?;
    let sh = (0.5 * beta_omega0).sinh();
    let sp = phi.sin();
    Ok(-0.5 * (sp * sp / (sh * sh)).ln_1p())
}

/// `γ_cor` of the collapsing scheme (`b₁ = b₂`): `−½ ln[1 − sin²Φ / cosh²(βω₀/2)]`.
pub fn gamma_cor_collapsing(beta_omega0: f64, phi: f64) -> Result<f64, DynamicsError> {
    check_beta_omega0(beta_omega0)?;
    let ch = (0.5 * beta_omega0).cosh();
    let sp = phi.sin();
    Ok(-0.5 * (-(sp * sp) / (ch * ch)).ln_1p())
}

/// `γ_cor` after a selective preparation with population difference `σ_z`:
/// `−½ ln[1 − (1 − σ_z²) sin²Φ / (cosh(βω₀/2) − σ_z sinh(βω₀/2))²]`.
pub fn gamma_cor_selective(sigma_z: f64, beta_omega0: f64, phi: f64) -> Result<f64, DynamicsError> {
    check_beta_omega0(beta_omega0)?;
    check_sigma_z(sigma_z)?;
    let g = gamma_cor_general(&SchemeKernelParams::selective(sigma_z, beta_omega0), phi)?;
    debug_assert!(g >= -1e-15);
    Ok(g)
}

fn check_sigma_z(sigma_z: f64) -> Result<(), DynamicsError> {
    if sigma_z.is_finite() && sigma_z.abs() <= 1.0 + ALGEBRA_TOL {
        Ok(())
    } else {
        Err(DynamicsError::InvalidSigmaZ(sigma_z))
    }
}

/// Correlation phase shift `χ ∈ (−π, π]`, the argument of
/// `D cos Φ + N₂ sin Φ + i N₁ sin Φ`. Trajectories unwrap it.
pub fn chi_general(p: &SchemeKernelParams, phi: f64) -> Result<f64, DynamicsError> {
    if p.is_degenerate() {
        return Err(DynamicsError::DegenerateScheme);
    }
    let (re, im) = p.factor(phi);
    Ok(im.atan2(re))
}

/// `χ` of the rotated scheme: `tan χ = coth(βω₀/2) tan Φ`.
pub fn chi_rotated(beta_omega0: f64, phi: f64) -> Result<f64, DynamicsError> {
    check_beta_omega0(beta_omega0)?;
    let h = 0.5 * beta_omega0;
    Ok((h.cosh() * phi.sin()).atan2(h.sinh() * phi.cos()))
}

/// `χ` of the collapsing scheme: `tan χ = tanh(βω₀/2) tan Φ`.
pub fn chi_collapsing(beta_omega0: f64, phi: f64) -> Result<f64, DynamicsError> {
    check_beta_omega0(beta_omega0)?;
    let h = 0.5 * beta_omega0;
    Ok((h.sinh() * phi.sin()).atan2(h.cosh() * phi.cos()))
}

/// `χ` after a selective preparation:
/// `tan χ = (sinh(βω₀/2) − σ_z cosh(βω₀/2)) / (cosh(βω₀/2) − σ_z sinh(βω₀/2)) · tan Φ`.
pub fn chi_selective(sigma_z: f64, beta_omega0: f64, phi: f64) -> Result<f64, DynamicsError> {
    check_beta_omega0(beta_omega0)?;
    check_sigma_z(sigma_z)?;
    chi_general(&SchemeKernelParams::selective(sigma_z, beta_omega0), phi)
}

/// Removes `2π` jumps so consecutive values differ by at most `π`.
pub fn unwrap_phase(values: &mut [f64]) {
    let mut offset = 0.0;
    for k in 1..values.len() {
        let prev = values[k - 1];
        let raw = values[k] + offset;
        let jump = ((raw - prev) / TAU).round();
        offset -= jump * TAU;
        values[k] = raw - jump * TAU;
    }
}

/// Purity `Tr ϱ² = (1 + v²)/2` of a qubit with Bloch length `v`.
pub fn purity(v: f64) -> Result<f64, DynamicsError> {
    check_bloch(v)?;
    Ok(0.5 * (1.0 + v * v))
}

/// Von Neumann entropy of a qubit with Bloch length `v`, in nats.
pub fn entropy(v: f64) -> Result<f64, DynamicsError> {
    check_bloch(v)?;
    let v = v.min(1.0);
    let s = LN_2 - 0.5 * xlnx(1.0 + v) - 0.5 * xlnx(1.0 - v);
    Ok(s.max(0.0))
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

fn check_bloch(v: f64) -> Result<(), DynamicsError> {
    if v.is_finite() && (0.0..=1.0 + BLOCH_SLACK).contains(&v) {
        Ok(())
    } else {
        Err(DynamicsError::InvalidBlochLength(v))
    }
}

/// Qubit-side parameters: `βω₀` and `ω₀/ω_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitParams {
    pub beta_omega0: f64,
    pub omega0_over_omegac: f64,
}

impl QubitParams {
    pub fn new(beta_omega0: f64, omega0_over_omegac: f64) -> Result<Self, DynamicsError> {
        ThermalContext::from_qubit(beta_omega0, omega0_over_omegac)?;
        Ok(Self {
            beta_omega0,
            omega0_over_omegac,
        })
    }

    pub fn thermal(&self) -> Result<ThermalContext, BathError> {
        ThermalContext::from_qubit(self.beta_omega0, self.omega0_over_omegac)
    }
}

/// Correlation constants of any scheme; `None` when the initial coherence vanishes.
pub fn correlation_params(
    s: &PreparationScheme,
    beta_omega0: f64,
) -> Result<Option<SchemeKernelParams>, DynamicsError> {
    check_beta_omega0(beta_omega0)?;
    let p = match s.variant() {
        SchemeVariant::Selective(psi) => {
            let sz = psi.c1().norm_sqr() - psi.c0().norm_sqr();
            SchemeKernelParams::selective(sz.clamp(-1.0, 1.0), beta_omega0)
        }
        SchemeVariant::NonSelective(ns) => SchemeKernelParams::new(ns, beta_omega0),
    };
    Ok((!p.is_degenerate()).then_some(p))
}

/// One sample of a trajectory. Fields that need a non-degenerate scheme are `None`
/// when the initial coherence is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub gamma: f64,
    pub gamma_cor: Option<f64>,
    pub gamma_eff: Option<f64>,
    pub phi: f64,
    pub chi: Option<f64>,
    pub coherence_plus: Complex64,
    pub reduced_coherence: Option<f64>,
    pub bloch_v: f64,
    pub purity: f64,
    pub entropy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DephasingTrajectory {
    pub params: QubitParams,
    pub initial: InitialAverages,
    pub kernel: Option<SchemeKernelParams>,
    pub points: Vec<TrajectoryPoint>,
}

impl DephasingTrajectory {
    pub fn times(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.t).collect()
    }

    /// Point with the largest reduced coherence, if defined.
    pub fn max_reduced_coherence(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .filter_map(|p| p.reduced_coherence.map(|r| (p.t, r)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Point with the largest purity.
    pub fn max_purity(&self) -> (f64, f64) {
        self.points
            .iter()
            .map(|p| (p.t, p.purity))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((f64::NAN, f64::NAN))
    }
}

fn check_grid(grid: &[f64]) -> Result<(), DynamicsError> {
    if grid.is_empty() {
        return Err(DynamicsError::InvalidGrid("grid is empty".into()));
    }
    if let Some(t) = grid.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(DynamicsError::InvalidGrid(format!("time {t} is not finite and >= 0")));
    }
    if let Some(k) = grid.windows(2).position(|w| w[1] <= w[0]) {
        return Err(DynamicsError::InvalidGrid(format!(
            "times must increase strictly (index {})",
            k + 1
        )));
    }
    Ok(())
}

/// Evaluates all observables on `grid` (times in `1/ω_c`).
pub fn coherence_trajectory(
    scheme: &PreparationScheme,
    bath: &BathSpec,
    params: &QubitParams,
    grid: &[f64],
) -> Result<DephasingTrajectory, DynamicsError> {
    bath.validate()?;
    check_grid(grid)?;
    let th = params.thermal()?;
    let initial = scheme.initial_averages(params.beta_omega0)?;
    let kernel = correlation_params(scheme, params.beta_omega0)?;

    let kernels: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&t| Ok((gamma_dynamical(bath, &th, t)?, phi_correlation(bath, t)?)))
        .collect::<Result<_, KernelError>>()?;

    let mut chi: Vec<f64> = match &kernel {
        Some(p) => kernels
            .iter()
            .map(|&(_, phi)| chi_general(p, phi))
            .collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    unwrap_phase(&mut chi);

    let sz = initial.sigma_z;
    let mut points = Vec::with_capacity(grid.len());
    for (k, (&t, &(gamma, phi))) in grid.iter().zip(&kernels).enumerate() {
        let (gamma_cor, chi_k, coherence_plus) = match &kernel {
            Some(p) => {
                let gc = gamma_cor_general(p, phi)?;
                let rotation = Complex64::from_polar(1.0, params.omega0_over_omegac * t + chi[k]);
                let c = initial.sigma_plus * rotation * (-(gamma + gc)).exp();
                (Some(gc), Some(chi[k]), c)
            }
            None => (None, None, Complex64::new(0.0, 0.0)),
        };
        let gamma_eff = gamma_cor.map(|g| gamma + g);
        let v = (4.0 * coherence_plus.norm_sqr() + sz * sz).sqrt();
        points.push(TrajectoryPoint {
            t,
            gamma,
            gamma_cor,
            gamma_eff,
            phi,
            chi: chi_k,
            coherence_plus,
            reduced_coherence: gamma_eff.map(|g| (-g).exp()),
            bloch_v: v,
            purity: purity(v)?,
            entropy: entropy(v)?,
        });
    }
    Ok(DephasingTrajectory {
        params: *params,
        initial,
        kernel,
        points,
    })
}

/// Evenly spaced grid of `n ≥ 2` points on `[t_min, t_max]`.
pub fn linear_grid(t_min: f64, t_max: f64, n: usize) -> Vec<f64> {
    let step = (t_max - t_min) / (n - 1) as f64;
    (0..n)
        .map(|k| if k + 1 == n { t_max } else { t_min + k as f64 * step })
        .collect()
}

/// Logarithmically spaced grid of `n ≥ 2` points on `[t_min, t_max]`, `t_min > 0`.
pub fn log_grid(t_min: f64, t_max: f64, n: usize) -> Vec<f64> {
    let (l0, l1) = (t_min.ln(), t_max.ln());
    let step = (l1 - l0) / (n - 1) as f64;
    (0..n)
        .map(|k| match k {
            0 => t_min,
            _ if k + 1 == n => t_max,
            _ => (l0 + k as f64 * step).exp(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{BlochDirection, QubitState};
    use std::f64::consts::{FRAC_PI_4, PI};

    fn dir(theta: f64, phi: f64) -> BlochDirection {
        BlochDirection::new(theta, phi).unwrap()
    }

    fn sample_schemes() -> Vec<PreparationScheme> {
        let mut out = Vec::new();
        for i in 0..6 {
            let a = dir(0.1 + 0.5 * i as f64, -2.0 + 0.7 * i as f64);
            let b = dir(2.9 - 0.45 * i as f64, 0.3 * i as f64 - 1.0);
            let c = dir(0.2 + 0.4 * i as f64, 2.5 - 0.9 * i as f64);
            out.push(PreparationScheme::general(a, b, c));
            out.push(PreparationScheme::rotated(a, b));
            out.push(PreparationScheme::collapsing(a, b));
            out.push(PreparationScheme::collapsing_antiphase(a, c));
            out.push(PreparationScheme::undisturbed(a));
        }
        out
    }

    #[test]
    fn factored_and_expanded_params_agree() {
        for s in sample_schemes() {
            let ns = s.non_selective().unwrap();
            for bw in [0.05, 0.7, 2.0, 5.0] {
                let p = SchemeKernelParams::new(ns, bw);
                let q = SchemeKernelParams::expanded(ns, bw);
                let scale = p.d.abs().max(p.n1.abs()).max(1.0);
                assert!((p.n1 - q.n1).abs() < 1e-12 * scale);
                assert!((p.n2 - q.n2).abs() < 1e-12 * scale);
                assert!((p.d - q.d).abs() < 1e-12 * scale);
            }
        }
    }

    #[test]
    fn n2_vanishes_in_special_cases() {
        let a = dir(0.8, 0.2);
        let b = dir(1.3, -0.6);
        for s in [PreparationScheme::rotated(a, b), PreparationScheme::collapsing(a, b)] {
            assert!(scheme_kernel_params(&s, 1.0).unwrap().n2.abs() < ALGEBRA_TOL);
        }
        let equator = PreparationScheme::general(
            dir(PI / 2.0, 0.0),
            dir(0.7, PI / 2.0),
            dir(2.0, 0.0),
        );
        assert!(scheme_kernel_params(&equator, 1.0).unwrap().n2.abs() < ALGEBRA_TOL);
        let sel = PreparationScheme::selective(QubitState::excited());
        assert!(scheme_kernel_params(&sel, 1.0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let sh = 0.5_f64.sinh();
        let exact = -0.5 * (1.0 + 1.0 / (sh * sh)).ln();
        assert!((gamma_cor_rotated(1.0, PI / 2.0).unwrap() - exact).abs() < 1e-14);
        assert!((gamma_cor_rotated(1.0, PI / 2.0).unwrap() + 0.7718).abs() < 2e-4);
        assert!((gamma_cor_rotated(0.1, FRAC_PI_4).unwrap() + 2.651).abs() < 1e-3);
        assert!((gamma_cor_collapsing(1.0, PI / 2.0).unwrap() + exact).abs() < 1e-14);
        assert!((gamma_cor_selective(0.5, 1.0, PI / 2.0).unwrap() - 3.011).abs() < 1e-3);
        assert_eq!(gamma_cor_rotated(1.0, 0.0).unwrap(), 0.0);
        assert_eq!(gamma_cor_collapsing(1.0, 0.0).unwrap(), 0.0);
        // arctan(coth 0.5) and arctan(tanh 0.5)
        assert!((chi_rotated(1.0, FRAC_PI_4).unwrap() - 1.137_911_585_175_067).abs() < 1e-14);
        assert!((chi_collapsing(1.0, FRAC_PI_4).unwrap() - 0.432_884_741_619_829_3).abs() < 1e-14);
        assert_eq!(chi_rotated(1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn selective_pole_has_no_correlation_decay() {
        for phi in [0.3, 1.5, 2.8] {
            for sz in [1.0, -1.0] {
                assert!(gamma_cor_selective(sz, 0.8, phi).unwrap().abs() < 1e-15);
            }
        }
        assert!(gamma_cor_selective(1.5, 1.0, 0.3).is_err());
    }

    #[test]
    fn selective_equator_matches_collapsing() {
        for bw in [0.1, 1.0, 3.3] {
            for phi in [0.2, 1.0, 2.0, 4.0] {
                let a = gamma_cor_selective(0.0, bw, phi).unwrap();
                let b = gamma_cor_collapsing(bw, phi).unwrap();
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn general_matches_special_closed_forms() {
        let a = dir(0.4, 1.0);
        let b = dir(1.2, -0.3);
        for bw in [0.1, 1.0, 4.0] {
            let ii = scheme_kernel_params(&PreparationScheme::rotated(a, b), bw).unwrap();
            let iii = scheme_kernel_params(&PreparationScheme::collapsing(a, b), bw).unwrap();
            for phi in [0.1, 0.9, 1.7, 3.0] {
                let g = gamma_cor_general(&ii, phi).unwrap();
                assert!((g - gamma_cor_rotated(bw, phi).unwrap()).abs() < 1e-12);
                let g = gamma_cor_general(&iii, phi).unwrap();
                assert!((g - gamma_cor_collapsing(bw, phi).unwrap()).abs() < 1e-12);
                let c = chi_general(&ii, phi).unwrap();
                assert!((c - chi_rotated(bw, phi).unwrap()).abs() < 1e-12);
                let c = chi_general(&iii, phi).unwrap();
                assert!((c - chi_collapsing(bw, phi).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_scheme_is_flagged() {
        let north = BlochDirection::north();
        let south = north.antipodal();
        let s = PreparationScheme::general(dir(0.7, 0.0), north, south);
        let p = scheme_kernel_params(&s, 1.0).unwrap();
        assert!(p.is_degenerate());
        assert_eq!(gamma_cor_general(&p, 0.5), Err(DynamicsError::DegenerateScheme));
        assert_eq!(chi_general(&p, 0.5), Err(DynamicsError::DegenerateScheme));
    }

    #[test]
    fn purity_and_entropy_values() {
        assert_eq!(purity(1.0).unwrap(), 1.0);
        assert_eq!(entropy(1.0).unwrap(), 0.0);
        assert_eq!(purity(0.0).unwrap(), 0.5);
        assert!((entropy(0.0).unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(purity(0.5).unwrap(), 0.625);
        assert!((entropy(0.5).unwrap() - 0.56233).abs() < 1e-5);
        assert!(entropy(1.0 + 5e-10).is_ok());
        assert!(purity(1.1).is_err());
        assert!(entropy(-0.1).is_err());
    }

    #[test]
    fn unwrap_removes_jumps() {
        let truth: Vec<f64> = (0..200).map(|k| 0.05 * k as f64).collect();
        let mut wrapped: Vec<f64> = truth.iter().map(|x| (x + PI).rem_euclid(TAU) - PI).collect();
        unwrap_phase(&mut wrapped);
        for (a, b) in wrapped.iter().zip(&truth) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn direct_coherence_matches_factorized_form() {
        // Sector-amplitude form: ⟨σ₊(t)⟩ e^{−iω₀t+γ} = (z₊ cos Φ + i z₋ sin Φ) / (4 cosh(βω₀/2)).
        let bath = BathSpec::ohmic(1.5).unwrap();
        let params = QubitParams::new(0.8, 0.2).unwrap();
        let grid = linear_grid(0.0, 6.0, 25);
        for s in sample_schemes() {
            let traj = coherence_trajectory(&s, &bath, &params, &grid).unwrap();
            let ns = s.non_selective().unwrap();
            let ca = ns.a.theta().cos();
            let h = 0.5 * params.beta_omega0;
            let (w1, w2) = sector_weights(ca, params.beta_omega0);
            let (v1, v2) = (h.sinh() - ca * h.cosh(), h.sinh() + ca * h.cosh());
            let u1 = Complex64::from_polar(ns.b1.theta().sin(), ns.b1.phi());
            let u2 = Complex64::from_polar(ns.b2.theta().sin(), ns.b2.phi());
            for p in &traj.points {
                let (sp, cp) = p.phi.sin_cos();
                let i = Complex64::i();
                let z = u1 * (w1 * cp + i * v1 * sp) + u2 * (w2 * cp + i * v2 * sp);
                let expected = z / (4.0 * h.cosh())
                    * Complex64::from_polar((-p.gamma).exp(), params.omega0_over_omegac * p.t);
                assert!((p.coherence_plus - expected).norm() < 1e-12, "{:?}", s.kind());
            }
        }
    }

    #[test]
    fn trajectory_starts_from_initial_state() {
        let bath = BathSpec::ohmic(1.0).unwrap();
        let params = QubitParams::new(1.0, 0.1).unwrap();
        let s = PreparationScheme::collapsing(dir(0.3, 0.0), dir(FRAC_PI_4, 0.0));
        let traj = coherence_trajectory(&s, &bath, &params, &[0.0, 0.5, 1.0]).unwrap();
        let p0 = traj.points[0];
        assert_eq!(p0.reduced_coherence, Some(1.0));
        assert!((p0.bloch_v - 1.0).abs() < 1e-12);
        assert!(p0.entropy < 1e-10);
        assert!((p0.purity - 1.0).abs() < 1e-12);
        for p in &traj.points {
            assert_eq!(p.gamma_eff, Some(p.gamma + p.gamma_cor.unwrap()));
        }
    }

    #[test]
    fn degenerate_trajectory_has_zero_coherence() {
        let bath = BathSpec::ohmic(1.0).unwrap();
        let params = QubitParams::new(1.0, 0.1).unwrap();
        let north = BlochDirection::north();
        let s = PreparationScheme::general(dir(1.0, 0.0), north, north);
        let traj = coherence_trajectory(&s, &bath, &params, &[0.0, 1.0]).unwrap();
        assert!(traj.kernel.is_none());
        for p in &traj.points {
            assert_eq!(p.coherence_plus, Complex64::new(0.0, 0.0));
            assert!(p.gamma_cor.is_none() && p.chi.is_none() && p.reduced_coherence.is_none());
            assert!((p.bloch_v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn grid_validation() {
        let bath = BathSpec::ohmic(1.0).unwrap();
        let params = QubitParams::new(1.0, 0.1).unwrap();
        let s = PreparationScheme::undisturbed(dir(0.5, 0.0));
        for grid in [vec![], vec![1.0, 0.5], vec![-1.0, 1.0], vec![0.0, f64::NAN]] {
            assert!(matches!(
                coherence_trajectory(&s, &bath, &params, &grid),
                Err(DynamicsError::InvalidGrid(_))
            ));
        }
        assert!(QubitParams::new(0.0, 0.1).is_err());
    }

    #[test]
    fn grids_hit_endpoints() {
        let g = log_grid(1e-2, 1e3, 400);
        assert_eq!(g.len(), 400);
        assert_eq!(g[0], 1e-2);
        assert_eq!(g[399], 1e3);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let l = linear_grid(0.0, 5.0, 50);
        assert_eq!(l[49], 5.0);
    }
}
