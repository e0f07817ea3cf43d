//! Self-checks runnable from the CLI: algebraic identities, kernel oracles and
//! the Fock-space comparison.

use std::f64::consts::{FRAC_PI_3, PI};
use std::fmt;

use num_complex::Complex64;

use crate::bath::{
    gamma_dynamical, gamma_ohmic_zero_temperature, gamma_quadrature, phi_correlation,
    phi_quadrature, BathSpec, DiscreteMode, ThermalContext,
};
use crate::bloch::{BlochDirection, QubitOperator, ALGEBRA_TOL};
use crate::dynamics::{
    chi_collapsing, chi_general, chi_rotated, coherence_trajectory, gamma_cor_collapsing,
    gamma_cor_general, gamma_cor_rotated, linear_grid, scheme_kernel_params, DynamicsError,
    QubitParams,
};
use crate::fock::{apply_preparation, build_equilibrium, CoherenceProbe, FockError, FockMode, FockSystem};
use crate::preparation::PreparationScheme;

/// Tolerance for quadrature-backed identities.
pub const KERNEL_TOL: f64 = 1e-8;
/// Relative tolerance for closed form versus Fock-space coherence.
pub const ORACLE_TOL: f64 = 1e-6;
/// Tolerance for the truncation-doubling check.
pub const TRUNCATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Kernels,
    Oracle,
    All,
}

impl Suite {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "algebra" => Some(Suite::Algebra),
            "kernels" => Some(Suite::Kernels),
            "oracle" => Some(Suite::Oracle),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub suite: &'static str,
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.max_error.is_finite() && self.max_error < self.tolerance
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub cases: Vec<CaseResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    fn push(&mut self, suite: &'static str, name: impl Into<String>, max_error: f64, tolerance: f64) {
        self.cases.push(CaseResult {
            suite,
            name: name.into(),
            max_error,
            tolerance,
        });
    }

    /// CSV with columns `suite,case,max_error,tolerance,status`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,case,max_error,tolerance,status\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{:.6e},{:.1e},{}\n",
                c.suite,
                c.name,
                c.max_error,
                c.tolerance,
                if c.passed() { "pass" } else { "FAIL" }
            ));
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            writeln!(
                f,
                "{:4} {:8} {:48} max_err={:.3e} tol={:.0e}",
                if c.passed() { "ok" } else { "FAIL" },
                c.suite,
                c.name,
                c.max_error,
                c.tolerance
            )?;
        }
        let failed = self.cases.iter().filter(|c| !c.passed()).count();
        write!(f, "{} cases, {} failed", self.cases.len(), failed)
    }
}

/// Deterministic spread of directions over the sphere (golden-angle spiral).
pub fn spiral_directions(n: usize) -> Vec<BlochDirection> {
    let golden = PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            BlochDirection::new(z.acos(), golden * k as f64).expect("valid angles")
        })
        .collect()
}

pub fn run(suite: Suite) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport::default();
    if matches!(suite, Suite::Algebra | Suite::All) {
        algebra(&mut report)?;
    }
    if matches!(suite, Suite::Kernels | Suite::All) {
        kernels(&mut report)?;
    }
    if matches!(suite, Suite::Oracle | Suite::All) {
        oracle(&mut report)?;
    }
    Ok(report)
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Kernel(#[from] crate::bath::KernelError),
    #[error(transparent)]
    Preparation(#[from] crate::preparation::PreparationError),
}

fn max_over<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn algebra(r: &mut VerificationReport) -> Result<(), VerifyError> {
    const S: &str = "algebra";
    let dirs = spiral_directions(100);
    let id = QubitOperator::identity();

    r.push(S, "completeness |a><a| + |-a><-a| = I", max_over(dirs.iter().map(|d| {
        (d.state().projector() + d.antipodal().state().projector()).max_abs_diff(&id)
    })), ALGEBRA_TOL);
    r.push(S, "U(a) unitary", max_over(dirs.iter().map(|d| d.unitary().unitarity_residual())), ALGEBRA_TOL);
    r.push(S, "U(a)|1> = |a>, U(a)|0> = |-a>", max_over(dirs.iter().map(|d| {
        let u = d.unitary();
        let up = u.apply(&crate::bloch::QubitState::excited());
        let down = u.apply(&crate::bloch::QubitState::ground());
        let s = d.state();
        let m = d.antipodal().state();
        (up.c1() - s.c1()).norm().max((up.c0() - s.c0()).norm())
            .max(down.projector().max_abs_diff(&m.projector()))
    })), ALGEBRA_TOL);
    r.push(S, "U(b,a)|a> = |b>", max_over(dirs.iter().zip(dirs.iter().rev()).map(|(a, b)| {
        let v = crate::bloch::relative_unitary(b, a).apply(&a.state());
        (v.c1() - b.state().c1()).norm().max((v.c0() - b.state().c0()).norm())
    })), ALGEBRA_TOL);
    r.push(S, "sigma(a)|+-a> = +-|+-a>", max_over(dirs.iter().map(|d| {
        let s = d.spin_component();
        let p = d.state();
        let m = d.antipodal().state();
        let sp = s.apply(&p);
        let sm = s.apply(&m);
        (sp.c1() - p.c1()).norm().max((sp.c0() - p.c0()).norm())
            .max((sm.c1() + m.c1()).norm()).max((sm.c0() + m.c0()).norm())
    })), ALGEBRA_TOL);

    let mut effects: f64 = 0.0;
    let mut second: f64 = 0.0;
    let mut averages: f64 = 0.0;
    let mut closed: f64 = 0.0;
    for (k, a) in dirs.iter().enumerate() {
        let b1 = dirs[(7 * k + 3) % dirs.len()];
        let b2 = dirs[(13 * k + 5) % dirs.len()];
        let ops = PreparationScheme::general(*a, b1, b2).operators();
        let sum: QubitOperator = ops.iter().map(|o| o.effect).sum();
        effects = effects.max(sum.max_abs_diff(&id));
        for o in &ops {
            effects = effects.max((o.effect * o.effect).max_abs_diff(&o.effect));
        }
        let rot = PreparationScheme::rotated(*a, b1);
        let sum: QubitOperator = rot.operators().iter().map(|o| o.omega * o.omega.dagger()).sum();
        second = second.max(sum.max_abs_diff(&id));

        let bw = 0.05 + 4.95 * (k as f64 / dirs.len() as f64);
        let h = 0.5 * bw;
        let avg = rot.initial_averages(bw)?;
        let expect_z = -h.tanh() * a.theta().cos() * b1.theta().cos();
        let expect_p = Complex64::from_polar(-0.5 * h.tanh() * a.theta().cos() * b1.theta().sin(), b1.phi());
        averages = averages.max((avg.sigma_z - expect_z).abs()).max((avg.sigma_plus - expect_p).norm());
        let col = PreparationScheme::collapsing(*a, b1).initial_averages(bw)?;
        averages = averages
            .max((col.sigma_z - b1.theta().cos()).abs())
            .max((col.sigma_plus - Complex64::from_polar(0.5 * b1.theta().sin(), b1.phi())).norm());

        if a.theta().cos().abs() >= 0.05 {
            let p_rot = scheme_kernel_params(&rot, bw)?;
            let p_col = scheme_kernel_params(&PreparationScheme::collapsing(*a, b1), bw)?;
            for j in 0..16 {
                let phi = -3.0 + 0.4 * j as f64;
                closed = closed
                    .max((gamma_cor_general(&p_rot, phi)? - gamma_cor_rotated(bw, phi)?).abs())
                    .max((gamma_cor_general(&p_col, phi)? - gamma_cor_collapsing(bw, phi)?).abs())
                    .max((chi_general(&p_rot, phi)? - chi_rotated(bw, phi)?).abs())
                    .max((chi_general(&p_col, phi)? - chi_collapsing(bw, phi)?).abs());
            }
        }
    }
    r.push(S, "effects resolve identity and are projectors", effects, ALGEBRA_TOL);
    r.push(S, "rotated scheme: sum Omega Omega^dag = I", second, ALGEBRA_TOL);
    r.push(S, "general averages reduce to special forms", averages, ALGEBRA_TOL);
    r.push(S, "general gamma_cor/chi reduce to closed forms", closed, ALGEBRA_TOL);
    Ok(())
}

fn kernels(r: &mut VerificationReport) -> Result<(), VerifyError> {
    const S: &str = "kernels";
    let grid = linear_grid(0.1, 50.0, 200);
    let mut phi_err: f64 = 0.0;
    let mut gamma_err: f64 = 0.0;
    let cold = ThermalContext::new(1e12).expect("positive");
    for lambda in [0.5, 1.0, 2.0] {
        for &t in &grid {
            phi_err = phi_err.max((phi_quadrature(1.0, lambda, t)? - lambda * t.atan()).abs());
            let g = gamma_quadrature(1.0, lambda, &cold, t)?;
            gamma_err = gamma_err.max((g - gamma_ohmic_zero_temperature(lambda, t)).abs());
        }
    }
    r.push(S, "Ohmic phi quadrature vs lambda*atan(t)", phi_err, KERNEL_TOL);
    r.push(S, "Ohmic T->0 gamma vs (lambda/2)ln(1+t^2)", gamma_err, KERNEL_TOL);

    let one = BathSpec::Discrete {
        modes: vec![DiscreteMode { omega: 1.0, g2: 0.25 }],
    };
    let th = ThermalContext::new(2.0).expect("positive");
    let g = gamma_dynamical(&one, &th, PI)?;
    r.push(S, "single mode gamma = 2 coth(1)", (g - 2.0 / 1.0_f64.tanh()).abs(), KERNEL_TOL);

    let late = max_over(
        [200.0, 1e3]
            .into_iter()
            .map(|t| phi_quadrature(1.0, 1.0, t).map(|v| (v - t.atan()).abs()))
            .collect::<Result<Vec<_>, _>>()?,
    );
    r.push(S, "Ohmic phi quadrature at late times (t=200, 1e3)", late, KERNEL_TOL);

    let mut mono: f64 = 0.0;
    let bath = BathSpec::ohmic(1.0).expect("valid");
    for t in [0.5, 5.0, 50.0] {
        let mut last = 0.0;
        for beta in [100.0, 10.0, 1.0, 0.1] {
            let g = gamma_dynamical(&bath, &ThermalContext::new(beta).expect("positive"), t)?;
            mono = mono.max(last - g);
            last = g;
        }
    }
    r.push(S, "gamma non-decreasing with temperature", mono, KERNEL_TOL);
    let _ = phi_correlation(&bath, 1.0)?;
    Ok(())
}

/// Qubit frequency of the standard oracle system (cutoff units).
pub const ORACLE_OMEGA0: f64 = 0.25;

/// Two-mode bath used for the oracle comparisons.
pub fn oracle_modes(n_max: usize) -> Vec<FockMode> {
    vec![
        FockMode::new(1.0, 0.15).with_n_max(n_max),
        FockMode::new(1.7, 0.2).with_n_max(n_max),
    ]
}

/// The five preparation families compared against the oracle.
pub fn oracle_schemes() -> Vec<(&'static str, PreparationScheme)> {
    let a = BlochDirection::new(FRAC_PI_3, 0.3).expect("valid");
    let b = BlochDirection::new(1.2, -0.7).expect("valid");
    let s = BlochDirection::new(1.1, 0.4).expect("valid");
    vec![
        ("selective", PreparationScheme::selective_along(&s)),
        ("undisturbed", PreparationScheme::undisturbed(a)),
        ("rotated", PreparationScheme::rotated(a, b)),
        ("collapsing", PreparationScheme::collapsing(a, b)),
        ("collapsing_antiphase", PreparationScheme::collapsing_antiphase(a, b)),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleComparison {
    /// Largest `|analytic − exact| / |exact|` over the grid.
    pub max_rel_error: f64,
    /// Largest `|⟨σ₃(t)⟩ − ⟨σ₃(0)⟩|`, from the closed form (exact by construction).
    pub initial_error: f64,
}

/// Closed-form coherence versus the Fock-space evolution on `grid`.
pub fn compare_with_oracle(
    fs: &FockSystem,
    scheme: &PreparationScheme,
    beta_omega0: f64,
    grid: &[f64],
) -> Result<OracleComparison, VerifyError> {
    let beta = beta_omega0 / fs.omega0();
    let rho = apply_preparation(&build_equilibrium(fs, beta)?, scheme)?;
    let probe = CoherenceProbe::new(fs, &rho);
    let params = QubitParams::new(beta_omega0, fs.omega0())?;
    let traj = coherence_trajectory(scheme, &fs.bath_spec(), &params, grid)?;
    let max_rel_error = max_over(traj.points.iter().map(|p| {
        let exact = probe.at(p.t);
        (p.coherence_plus - exact).norm() / exact.norm()
    }));
    let initial = scheme.initial_averages(beta_omega0)?;
    let initial_error = (initial.sigma_plus - probe.at(0.0)).norm()
        .max((initial.sigma_z - rho.expectation(&QubitOperator::sigma_z()).re).abs());
    Ok(OracleComparison {
        max_rel_error,
        initial_error,
    })
}

/// Largest change of `⟨σ₊(t)⟩` on `grid` when every cutoff is doubled.
pub fn truncation_change(
    n_max: usize,
    scheme: &PreparationScheme,
    beta_omega0: f64,
    grid: &[f64],
) -> Result<f64, VerifyError> {
    let beta = beta_omega0 / ORACLE_OMEGA0;
    let probe = |n: usize| -> Result<CoherenceProbe, VerifyError> {
        let fs = FockSystem::new(ORACLE_OMEGA0, oracle_modes(n))?;
        let rho = apply_preparation(&build_equilibrium(&fs, beta)?, scheme)?;
        Ok(CoherenceProbe::new(&fs, &rho))
    };
    let (coarse, fine) = (probe(n_max)?, probe(2 * n_max)?);
    Ok(max_over(grid.iter().map(|&t| (coarse.at(t) - fine.at(t)).norm())))
}

fn oracle(r: &mut VerificationReport) -> Result<(), VerifyError> {
    const S: &str = "oracle";
    let fs = FockSystem::new(ORACLE_OMEGA0, oracle_modes(crate::fock::DEFAULT_N_MAX))?;
    let grid = linear_grid(0.0, 5.0, 50);
    for bw in [0.5, 1.0, 2.0] {
        for (name, scheme) in oracle_schemes() {
            let c = compare_with_oracle(&fs, &scheme, bw, &grid)?;
            r.push(S, format!("{name} bw0={bw}: coherence rel err"), c.max_rel_error, ORACLE_TOL);
            r.push(S, format!("{name} bw0={bw}: initial averages"), c.initial_error, KERNEL_TOL);
        }
    }
    let (_, rotated) = oracle_schemes()[2];
    let change = truncation_change(12, &rotated, 0.5, &grid)?;
    r.push(S, "doubling n_max (12 -> 24) at bw0=0.5", change, TRUNCATION_TOL);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spiral_covers_sphere() {
        let d = spiral_directions(50);
        assert!(d.iter().any(|x| x.theta() < 0.3));
        assert!(d.iter().any(|x| x.theta() > PI - 0.3));
    }

    #[test]
    fn algebra_suite_passes() {
        let r = run(Suite::Algebra).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::from_name("all"), Some(Suite::All));
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn failing_case_is_reported() {
        let mut r = VerificationReport::default();
        r.push("x", "bad", 1.0, 0.5);
        r.push("x", "nan", f64::NAN, 0.5);
        assert!(!r.passed());
        assert!(r.to_csv().contains("FAIL"));
        assert!(r.to_string().ends_with("2 cases, 2 failed"));
    }
}
