//! Preparation measurements performed on the qubit at `t = 0`.
//!
//! A measurement is described by pairs `(F_m, Ω_m)` with `F_m = Ω_m†Ω_m`. The
//! post-measurement composite state is `Σ_m Ω_m ϱ_eq Ω_m†` for non-selective
//! measurements, and `P_ψ ϱ_eq P_ψ / Z` for a selective one.
//!
//! Every non-selective scheme here is built from three directions `a`, `b₁`, `b₂`:
//!
//! ```text
//! F₁ = |a⟩⟨a|,      F₂ = |−a⟩⟨−a|,
//! Ω₁ = |b₁⟩⟨a|,     Ω₂ = |b₂⟩⟨−a|.
//! ```

use num_complex::Complex64;
use thiserror::Error;

use crate::bloch::{BlochDirection, QubitOperator, QubitState, ALGEBRA_TOL};
use crate::dynamics::SchemeKernelParams;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PreparationError {
    #[error("beta_omega0 must be finite and > 0, got {0}")]
    InvalidTemperature(f64),
    #[error("the enhancement condition is only defined for non-selective schemes")]
    SelectiveScheme,
}

pub(crate) fn check_beta_omega0(beta_omega0: f64) -> Result<(), PreparationError> {
    if beta_omega0.is_finite() && beta_omega0 > 0.0 {
        Ok(())
    } else {
        Err(PreparationError::InvalidTemperature(beta_omega0))
    }
}

/// Which special case, if any, a scheme was built as.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Selective,
    General,
    /// `b₁ = a`, `b₂ = −a`: the device leaves the measured basis untouched.
    Undisturbed,
    /// `b₁ = b`, `b₂ = −b`: one unitary `U(b, a)` for both outcomes.
    Rotated,
    /// `b₁ = b₂ = b`: both outcomes end in the same state.
    Collapsing,
    /// `θ₁ = θ₂`, `φ₂ = φ₁ + π`.
    CollapsingAntiphase,
}

/// Three directions defining a two-outcome projective preparation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonSelectiveScheme {
    pub a: BlochDirection,
    pub b1: BlochDirection,
    pub b2: BlochDirection,
}

impl NonSelectiveScheme {
    /// `Δφ = φ₁ − φ₂`, unreduced.
    pub fn delta_phi(&self) -> f64 {
        self.b1.phi() - self.b2.phi()
    }

    pub fn outcomes(&self) -> [MeasurementOutcome; 2] {
        let a = self.a.state();
        let minus_a = self.a.antipodal().state();
        let b1 = self.b1.state();
        let b2 = self.b2.state();
        [
            MeasurementOutcome {
                effect: a.projector(),
                omega: QubitOperator::outer(&b1, &a),
            },
            MeasurementOutcome {
                effect: minus_a.projector(),
                omega: QubitOperator::outer(&b2, &minus_a),
            },
        ]
    }
}

/// One outcome of a preparation measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementOutcome {
    pub effect: QubitOperator,
    pub omega: QubitOperator,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeVariant {
    Selective(QubitState),
    NonSelective(NonSelectiveScheme),
}

/// A preparation measurement together with the special case it was built as.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreparationScheme {
    variant: SchemeVariant,
    kind: SchemeKind,
}

impl PreparationScheme {
    pub fn selective(psi: QubitState) -> Self {
        Self {
            variant: SchemeVariant::Selective(psi),
            kind: SchemeKind::Selective,
        }
    }

    /// Selective preparation of the state along `d`.
    pub fn selective_along(d: &BlochDirection) -> Self {
        Self::selective(d.state())
    }

    pub fn general(a: BlochDirection, b1: BlochDirection, b2: BlochDirection) -> Self {
        Self {
            variant: SchemeVariant::NonSelective(NonSelectiveScheme { a, b1, b2 }),
            kind: SchemeKind::General,
        }
    }

    pub fn undisturbed(a: BlochDirection) -> Self {
        Self::special(a, a, a.antipodal(), SchemeKind::Undisturbed)
    }

    pub fn rotated(a: BlochDirection, b: BlochDirection) -> Self {
        Self::special(a, b, b.antipodal(), SchemeKind::Rotated)
    }

    pub fn collapsing(a: BlochDirection, b: BlochDirection) -> Self {
        Self::special(a, b, b, SchemeKind::Collapsing)
    }

    pub fn collapsing_antiphase(a: BlochDirection, b: BlochDirection) -> Self {
        let b2 = BlochDirection::new(b.theta(), b.phi() + std::f64::consts::PI)
            .expect("theta already validated");
        Self::special(a, b, b2, SchemeKind::CollapsingAntiphase)
    }

    fn special(a: BlochDirection, b1: BlochDirection, b2: BlochDirection, kind: SchemeKind) -> Self {
        Self {
            variant: SchemeVariant::NonSelective(NonSelectiveScheme { a, b1, b2 }),
            kind,
        }
    }

    pub fn variant(&self) -> &SchemeVariant {
        &self.variant
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn non_selective(&self) -> Option<&NonSelectiveScheme> {
        match &self.variant {
            SchemeVariant::NonSelective(s) => Some(s),
            SchemeVariant::Selective(_) => None,
        }
    }

    /// Effects and Ω-operators. A selective scheme yields the single pair `(P_ψ, P_ψ)`.
    pub fn operators(&self) -> Vec<MeasurementOutcome> {
        match &self.variant {
            SchemeVariant::Selective(psi) => {
                let p = psi.projector();
                vec![MeasurementOutcome { effect: p, omega: p }]
            }
            SchemeVariant::NonSelective(s) => s.outcomes().to_vec(),
        }
    }

    /// The dual scheme `F̃_m = Ω_mΩ_m†`, `Ω̃_m = Ω_m†`.
    ///
    /// It exists only when `b₂ = −b₁`, i.e. when a single unitary disturbs both
    /// outcomes. Selective schemes have no dual.
    pub fn dual(&self) -> Option<Self> {
        let s = self.non_selective()?;
        let antipode = s.b1.antipodal().state().projector();
        if antipode.max_abs_diff(&s.b2.state().projector()) > ALGEBRA_TOL {
            return None;
        }
        let kind = match self.kind {
            SchemeKind::Undisturbed => SchemeKind::Undisturbed,
            SchemeKind::Rotated => SchemeKind::Rotated,
            _ => SchemeKind::General,
        };
        Some(Self::special(s.b1, s.a, s.a.antipodal(), kind))
    }

    /// Qubit averages right after the preparation.
    pub fn initial_averages(&self, beta_omega0: f64) -> Result<InitialAverages, PreparationError> {
        check_beta_omega0(beta_omega0)?;
        Ok(match &self.variant {
            SchemeVariant::Selective(psi) => {
                let (c1, c0) = (psi.c1(), psi.c0());
                InitialAverages::new(c1.conj() * c0, c1.norm_sqr() - c0.norm_sqr())
            }
            SchemeVariant::NonSelective(s) => general_initial_averages(s, beta_omega0),
        })
    }

    /// Sufficient condition for `γ_cor(t) ≤ 0` at all times: `sinΔφ = 0` and `N₁² > D²`.
    pub fn enhancement_predicate(&self, beta_omega0: f64) -> Result<bool, PreparationError> {
        check_beta_omega0(beta_omega0)?;
        let s = self.non_selective().ok_or(PreparationError::SelectiveScheme)?;
        if s.delta_phi().sin().abs() > ALGEBRA_TOL {
            return Ok(false);
        }
        let p = SchemeKernelParams::new(s, beta_omega0);
        Ok(p.n1 * p.n1 > p.d * p.d)
    }
}

/// Free-function form of [`PreparationScheme::operators`].
pub fn scheme_operators(s: &PreparationScheme) -> Vec<MeasurementOutcome> {
    s.operators()
}

/// Free-function form of [`PreparationScheme::initial_averages`].
pub fn initial_averages(
    s: &PreparationScheme,
    beta_omega0: f64,
) -> Result<InitialAverages, PreparationError> {
    s.initial_averages(beta_omega0)
}

/// Free-function form of [`PreparationScheme::enhancement_predicate`].
pub fn enhancement_predicate(s: &PreparationScheme, beta_omega0: f64) -> Result<bool, PreparationError> {
    s.enhancement_predicate(beta_omega0)
}

/// `⟨σ₊⟩`, `⟨σ₋⟩ = ⟨σ₊⟩*` and `⟨σ₃⟩` at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialAverages {
    pub sigma_plus: Complex64,
    pub sigma_minus: Complex64,
    pub sigma_z: f64,
}

impl InitialAverages {
    pub fn new(sigma_plus: Complex64, sigma_z: f64) -> Self {
        Self {
            sigma_plus,
            sigma_minus: sigma_plus.conj(),
            sigma_z,
        }
    }

    /// Length of the initial Bloch vector, `√(4|⟨σ₊⟩|² + ⟨σ₃⟩²)`.
    pub fn bloch_magnitude(&self) -> f64 {
        (4.0 * self.sigma_plus.norm_sqr() + self.sigma_z * self.sigma_z).sqrt()
    }
}

/// Thermal weights of the measured basis states seen from the `|1⟩`/`|0⟩` sectors.
///
/// With `h = βω₀/2`, `s = sin²(θ_a/2)`, `c = cos²(θ_a/2)`:
/// `e^{h}s + e^{−h}c = cosh h − cosθ_a sinh h` and
/// `e^{h}c + e^{−h}s = cosh h + cosθ_a sinh h`.
pub(crate) fn sector_weights(cos_theta_a: f64, beta_omega0: f64) -> (f64, f64) {
    let h = 0.5 * beta_omega0;
    let (sh, ch) = (h.sinh(), h.cosh());
    (ch - cos_theta_a * sh, ch + cos_theta_a * sh)
}

fn general_initial_averages(s: &NonSelectiveScheme, beta_omega0: f64) -> InitialAverages {
    let (w1, w2) = sector_weights(s.a.theta().cos(), beta_omega0);
    let norm = (0.5 * beta_omega0).cosh();
    let u1 = Complex64::from_polar(s.b1.theta().sin(), s.b1.phi());
    let u2 = Complex64::from_polar(s.b2.theta().sin(), s.b2.phi());
    let sigma_plus = (u1 * w1 + u2 * w2) / (4.0 * norm);
    let sigma_z = (s.b1.theta().cos() * w1 + s.b2.theta().cos() * w2) / (2.0 * norm);
    InitialAverages::new(sigma_plus, sigma_z)
}
