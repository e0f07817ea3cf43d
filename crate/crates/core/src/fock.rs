//! Brute-force reference: the dephasing Hamiltonian with a few bosonic modes in
//! a truncated Fock space.
//!
//! ```text
//! H = (ω₀/2) σ₃ + Σ_k ω_k b_k†b_k + σ₃ Σ_k g_k (b_k† + b_k)
//! ```
//!
//! `H` is block diagonal in the `σ₃` basis: the `|1⟩` block is `ω₀/2 + H₊` and
//! the `|0⟩` block is `−ω₀/2 + H₋`, with `H_± = Σ ω_k b_k†b_k ± Σ g_k (b_k† + b_k)`.
//! Couplings are real; the closed-form dynamics only depend on `g_k²`.
//!
//! Composite index is `q·D + j` with `q = 0` for `|1⟩`, `q = 1` for `|0⟩`, and
//! `j` the bath index (mode 0 varies slowest).

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use thiserror::Error;

use crate::bath::{BathSpec, DiscreteMode};
use crate::bloch::QubitOperator;
use crate::preparation::{PreparationScheme, SchemeVariant};

/// Default per-mode truncation.
pub const DEFAULT_N_MAX: usize = 15;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("mode {index}: frequency must be finite and > 0, got {omega}")]
    InvalidFrequency { index: usize, omega: f64 },
    #[error("mode {index}: coupling must be finite, got {coupling}")]
    InvalidCoupling { index: usize, coupling: f64 },
    #[error("qubit frequency must be finite, got {0}")]
    InvalidQubitFrequency(f64),
    #[error("inverse temperature must be finite and > 0, got {0}")]
    InvalidTemperature(f64),
    #[error("mode {index}: n_max = {n_max} is below the required {required} at this temperature")]
    TruncationInadequate { index: usize, n_max: usize, required: f64 },
    #[error("selective outcome has probability {0:e}")]
    ZeroProbability(f64),
    #[error("bath dimension {0} exceeds the supported limit")]
    TooLarge(usize),
    #[error("only discrete baths can be simulated in Fock space")]
    ContinuumBath,
}

/// One bosonic mode with real coupling `g` and occupation cutoff `n_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockMode {
    pub omega: f64,
    pub coupling: f64,
    pub n_max: usize,
}

impl FockMode {
    pub fn new(omega: f64, coupling: f64) -> Self {
        Self {
            omega,
            coupling,
            n_max: DEFAULT_N_MAX,
        }
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    /// Thermal occupation `1/(e^{βω} − 1)` of the uncoupled mode.
    pub fn mean_occupation(&self, beta: f64) -> f64 {
        1.0 / (beta * self.omega).exp_m1()
    }

    /// Smallest acceptable cutoff at inverse temperature `beta`: `10·n̄ + 10`.
    pub fn required_n_max(&self, beta: f64) -> f64 {
        10.0 * self.mean_occupation(beta) + 10.0
    }
}

const MAX_BATH_DIM: usize = 4096;

/// Sector Hamiltonians and their eigendecompositions.
#[derive(Debug, Clone)]
pub struct FockSystem {
    omega0: f64,
    modes: Vec<FockMode>,
    dims: Vec<usize>,
    bath_dim: usize,
    h_plus: DMatrix<f64>,
    h_minus: DMatrix<f64>,
    eig_plus: SymmetricEigen<f64, nalgebra::Dyn>,
    eig_minus: SymmetricEigen<f64, nalgebra::Dyn>,
}

impl FockSystem {
    pub fn new(omega0: f64, modes: Vec<FockMode>) -> Result<Self, FockError> {
        if !omega0.is_finite() {
            return Err(FockError::InvalidQubitFrequency(omega0));
        }
        for (index, m) in modes.iter().enumerate() {
            if !(m.omega.is_finite() && m.omega > 0.0) {
                return Err(FockError::InvalidFrequency { index, omega: m.omega });
            }
            if !m.coupling.is_finite() {
                return Err(FockError::InvalidCoupling { index, coupling: m.coupling });
            }
        }
        let dims: Vec<usize> = modes.iter().map(|m| m.n_max + 1).collect();
        let bath_dim = dims
            .iter()
            .try_fold(1usize, |acc, d| acc.checked_mul(*d))
            .filter(|d| *d <= MAX_BATH_DIM)
            .ok_or(FockError::TooLarge(dims.iter().product()))?;

        let mut free = DMatrix::<f64>::zeros(bath_dim, bath_dim);
        let mut coupling = DMatrix::<f64>::zeros(bath_dim, bath_dim);
        for (k, m) in modes.iter().enumerate() {
            let b = mode_operator(&dims, k, &annihilation(dims[k]));
            let n = b.transpose() * &b;
            free += n * m.omega;
            coupling += (&b + b.transpose()) * m.coupling;
        }
        let h_plus = &free + &coupling;
        let h_minus = &free - &coupling;
        let eig_plus = SymmetricEigen::new(h_plus.clone());
        let eig_minus = SymmetricEigen::new(h_minus.clone());
        Ok(Self {
            omega0,
            modes,
            dims,
            bath_dim,
            h_plus,
            h_minus,
            eig_plus,
            eig_minus,
        })
    }

    /// Builds the system from a discrete bath with `g_k = √(|g_k|²)`.
    pub fn from_discrete(omega0: f64, bath: &BathSpec, n_max: usize) -> Result<Self, FockError> {
        match bath {
            BathSpec::Discrete { modes } => Self::new(
                omega0,
                modes
                    .iter()
                    .map(|m| FockMode::new(m.omega, m.g2.sqrt()).with_n_max(n_max))
                    .collect(),
            ),
            BathSpec::OhmicFamily { .. } => Err(FockError::ContinuumBath),
        }
    }

    /// The discrete bath these modes represent, `|g_k|² = g_k²`.
    pub fn bath_spec(&self) -> BathSpec {
        BathSpec::Discrete {
            modes: self
                .modes
                .iter()
                .map(|m| DiscreteMode {
                    omega: m.omega,
                    g2: m.coupling * m.coupling,
                })
                .collect(),
        }
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn modes(&self) -> &[FockMode] {
        &self.modes
    }

    pub fn bath_dim(&self) -> usize {
        self.bath_dim
    }

    /// `H₊` for `upper = true`, `H₋` otherwise.
    pub fn sector_hamiltonian(&self, upper: bool) -> &DMatrix<f64> {
        if upper {
            &self.h_plus
        } else {
            &self.h_minus
        }
    }

    /// Lowest eigenvalue of `H₊` or `H₋`.
    pub fn sector_ground_energy(&self, upper: bool) -> f64 {
        let eig = if upper { &self.eig_plus } else { &self.eig_minus };
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Annihilation operator of mode `k` on the bath space.
    pub fn annihilation(&self, k: usize) -> DMatrix<f64> {
        mode_operator(&self.dims, k, &annihilation(self.dims[k]))
    }

    /// Full Hamiltonian on the composite space, assembled from Kronecker
    /// products independently of the sector matrices.
    pub fn hamiltonian(&self) -> DMatrix<f64> {
        let d = self.bath_dim;
        let sz = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let eye2 = DMatrix::<f64>::identity(2, 2);
        let mut h = sz.kronecker(&DMatrix::<f64>::identity(d, d)) * (0.5 * self.omega0);
        for (k, m) in self.modes.iter().enumerate() {
            let b = self.annihilation(k);
            let bd = b.transpose();
            h += eye2.kronecker(&(&bd * &b)) * m.omega;
            h += sz.kronecker(&(&bd + &b)) * m.coupling;
        }
        h
    }

    /// Checks `n_max ≥ 10·n̄ + 10` for every mode.
    pub fn check_truncation(&self, beta: f64) -> Result<(), FockError> {
        for (index, m) in self.modes.iter().enumerate() {
            let required = m.required_n_max(beta);
            if (m.n_max as f64) < required {
                return Err(FockError::TruncationInadequate {
                    index,
                    n_max: m.n_max,
                    required,
                });
            }
        }
        Ok(())
    }
}

fn annihilation(dim: usize) -> DMatrix<f64> {
    let mut b = DMatrix::<f64>::zeros(dim, dim);
    for n in 1..dim {
        b[(n - 1, n)] = (n as f64).sqrt();
    }
    b
}

/// Embeds a single-mode operator at position `k` of the bath tensor product.
fn mode_operator(dims: &[usize], k: usize, op: &DMatrix<f64>) -> DMatrix<f64> {
    dims.iter().enumerate().fold(DMatrix::<f64>::identity(1, 1), |acc, (j, &d)| {
        if j == k {
            acc.kronecker(op)
        } else {
            acc.kronecker(&DMatrix::<f64>::identity(d, d))
        }
    })
}

fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Density matrix of qubit plus bath.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeDensityMatrix {
    bath_dim: usize,
    matrix: DMatrix<Complex64>,
}

impl CompositeDensityMatrix {
    pub fn from_matrix(bath_dim: usize, matrix: DMatrix<Complex64>) -> Self {
        assert_eq!(matrix.nrows(), 2 * bath_dim);
        assert_eq!(matrix.ncols(), 2 * bath_dim);
        Self { bath_dim, matrix }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn bath_dim(&self) -> usize {
        self.bath_dim
    }

    /// Bath block `⟨q|ϱ|r⟩`, with `q, r ∈ {0 → |1⟩, 1 → |0⟩}`.
    pub fn block(&self, q: usize, r: usize) -> DMatrix<Complex64> {
        let d = self.bath_dim;
        self.matrix.view((q * d, r * d), (d, d)).into_owned()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint()).camax()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `Tr[(A ⊗ I) ϱ]` for a qubit operator `A`.
    pub fn expectation(&self, op: &QubitOperator) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for q in 0..2 {
            for r in 0..2 {
                let a = op.get(q, r);
                if a != Complex64::new(0.0, 0.0) {
                    acc += a * self.block(r, q).trace();
                }
            }
        }
        acc
    }

    /// Partial trace over the bath.
    pub fn reduced_qubit(&self) -> QubitOperator {
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (q, row) in m.iter_mut().enumerate() {
            for (r, entry) in row.iter_mut().enumerate() {
                *entry = self.block(q, r).trace();
            }
        }
        QubitOperator::new(m)
    }

    /// Partial trace over the qubit.
    pub fn reduced_bath(&self) -> DMatrix<Complex64> {
        self.block(0, 0) + self.block(1, 1)
    }

    /// `‖ϱ − ϱ_S ⊗ ϱ_B‖_max` with the two reduced states.
    pub fn product_residual(&self) -> f64 {
        let s = self.reduced_qubit();
        let b = self.reduced_bath();
        let mut worst: f64 = 0.0;
        for q in 0..2 {
            for r in 0..2 {
                let diff = self.block(q, r) - &b * s.get(q, r);
                worst = worst.max(diff.camax());
            }
        }
        worst
    }

    /// Mean occupation `⟨b_k†b_k⟩` of mode `k` in `fs`.
    pub fn mode_occupation(&self, fs: &FockSystem, k: usize) -> f64 {
        let b = fs.annihilation(k);
        let n = to_complex(&(b.transpose() * b));
        (self.reduced_bath() * n).trace().re
    }
}

/// Gibbs state `e^{−βH}/Z`, built sector by sector.
pub fn build_equilibrium(fs: &FockSystem, beta: f64) -> Result<CompositeDensityMatrix, FockError> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(FockError::InvalidTemperature(beta));
    }
    fs.check_truncation(beta)?;
    let d = fs.bath_dim;
    let half = 0.5 * fs.omega0;
    let shift = (half + fs.sector_ground_energy(true)).min(-half + fs.sector_ground_energy(false));

    let sector = |eig: &SymmetricEigen<f64, nalgebra::Dyn>, offset: f64| {
        let w = eig.eigenvalues.map(|e| (-beta * (e + offset - shift)).exp());
        let v = &eig.eigenvectors;
        v * DMatrix::from_diagonal(&w) * v.transpose()
    };
    let upper = sector(&fs.eig_plus, half);
    let lower = sector(&fs.eig_minus, -half);
    let z = upper.trace() + lower.trace();

    let mut m = DMatrix::<Complex64>::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(&to_complex(&(upper / z)));
    m.view_mut((d, d), (d, d)).copy_from(&to_complex(&(lower / z)));
    Ok(CompositeDensityMatrix::from_matrix(d, m))
}

/// `Σ_m (Ω_m ⊗ I) ϱ (Ω_m ⊗ I)†`, renormalized for a selective scheme.
pub fn apply_preparation(
    rho: &CompositeDensityMatrix,
    scheme: &PreparationScheme,
) -> Result<CompositeDensityMatrix, FockError> {
    let d = rho.bath_dim;
    let blocks = [[rho.block(0, 0), rho.block(0, 1)], [rho.block(1, 0), rho.block(1, 1)]];
    let mut out = DMatrix::<Complex64>::zeros(2 * d, 2 * d);
    for outcome in scheme.operators() {
        let w = outcome.omega;
        for q in 0..2 {
            for r in 0..2 {
                let mut acc = DMatrix::<Complex64>::zeros(d, d);
                for (qp, row) in blocks.iter().enumerate() {
                    for (rp, blk) in row.iter().enumerate() {
                        let c = w.get(q, qp) * w.get(r, rp).conj();
                        if c != Complex64::new(0.0, 0.0) {
                            acc += blk * c;
                        }
                    }
                }
                let mut view = out.view_mut((q * d, r * d), (d, d));
                view += acc;
            }
        }
    }
    if let SchemeVariant::Selective(_) = scheme.variant() {
        let tr = out.trace().re;
        if tr < 1e-14 {
            return Err(FockError::ZeroProbability(tr));
        }
        out /= Complex64::new(tr, 0.0);
    }
    Ok(CompositeDensityMatrix::from_matrix(d, out))
}

/// Precomputed spectral form of `⟨σ₊(t)⟩` for one initial state.
///
/// `⟨σ₊(t)⟩ = e^{iω₀t} Tr[e^{iH₊t} e^{−iH₋t} ϱ₀₁]`, where `ϱ₀₁ = ⟨0|ϱ|1⟩`.
/// In the eigenbases of `H₊` and `H₋` this is
/// `e^{iω₀t} Σ_{ij} C_ij e^{i(E₊ᵢ − E₋ⱼ)t}` with `C_ij = M_ij R_ji`,
/// `M = V₊ᵀV₋` and `R = V₋ᵀ ϱ₀₁ V₊`.
#[derive(Debug, Clone)]
pub struct CoherenceProbe {
    omega0: f64,
    e_plus: DVector<f64>,
    e_minus: DVector<f64>,
    weights: DMatrix<Complex64>,
}

impl CoherenceProbe {
    pub fn new(fs: &FockSystem, rho0: &CompositeDensityMatrix) -> Self {
        let vp = to_complex(&fs.eig_plus.eigenvectors);
        let vm = to_complex(&fs.eig_minus.eigenvectors);
        let m = vp.transpose() * &vm;
        let r = vm.transpose() * rho0.block(1, 0) * &vp;
        let weights = m.component_mul(&r.transpose());
        Self {
            omega0: fs.omega0,
            e_plus: fs.eig_plus.eigenvalues.clone(),
            e_minus: fs.eig_minus.eigenvalues.clone(),
            weights,
        }
    }

    pub fn at(&self, t: f64) -> Complex64 {
        let a: Vec<Complex64> = self.e_plus.iter().map(|e| Complex64::from_polar(1.0, e * t)).collect();
        let b: Vec<Complex64> = self.e_minus.iter().map(|e| Complex64::from_polar(1.0, -e * t)).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, ai) in a.iter().enumerate() {
            let row: Complex64 = b
                .iter()
                .enumerate()
                .map(|(j, bj)| self.weights[(i, j)] * bj)
                .sum();
            acc += ai * row;
        }
        acc * Complex64::from_polar(1.0, self.omega0 * t)
    }
}

/// `⟨σ₊(t)⟩ = Tr[e^{iHt}(σ₊ ⊗ I)e^{−iHt}ϱ₀]`.
pub fn coherence_exact(fs: &FockSystem, rho0: &CompositeDensityMatrix, t: f64) -> Complex64 {
    CoherenceProbe::new(fs, rho0).at(t)
}

/// `e^{−iHt} ϱ e^{iHt}` through a dense eigendecomposition of the full `H`.
///
/// Costs `O((2D)³)` per call; meant for small cross-checks.
pub fn evolve_full(fs: &FockSystem, rho: &CompositeDensityMatrix, t: f64) -> CompositeDensityMatrix {
    let eig = SymmetricEigen::new(fs.hamiltonian());
    let v = to_complex(&eig.eigenvectors);
    let phases = eig.eigenvalues.map(|e| Complex64::from_polar(1.0, -e * t));
    let u = &v * DMatrix::from_diagonal(&phases) * v.adjoint();
    let m = &u * rho.matrix() * u.adjoint();
    CompositeDensityMatrix::from_matrix(rho.bath_dim, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::BlochDirection;
    use std::f64::consts::PI;

    fn small_system(g: f64) -> FockSystem {
        FockSystem::new(
            0.25,
            vec![
                FockMode::new(1.0, g).with_n_max(12),
                FockMode::new(1.7, 0.8 * g).with_n_max(12),
            ],
        )
        .unwrap()
    }

    fn dir(theta: f64, phi: f64) -> BlochDirection {
        BlochDirection::new(theta, phi).unwrap()
    }

    #[test]
    fn uncoupled_equilibrium_is_product_of_gibbs_states() {
        let fs = small_system(0.0);
        let beta = 2.0;
        let rho = build_equilibrium(&fs, beta).unwrap();
        assert!(rho.product_residual() < 1e-12);
        for (k, m) in fs.modes().iter().enumerate() {
            let n = rho.mode_occupation(&fs, k);
            assert!((n - m.mean_occupation(beta)).abs() < 1e-8);
        }
        let pz = rho.expectation(&QubitOperator::sigma_z()).re;
        assert!((pz + (0.5 * beta * 0.25).tanh()).abs() < 1e-12);
    }

    #[test]
    fn equilibrium_is_a_state() {
        let fs = small_system(0.2);
        let rho = build_equilibrium(&fs, 4.0).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        assert!(rho.hermiticity_residual() < 1e-14);
        assert!(rho.min_eigenvalue() > -1e-12);
    }

    #[test]
    fn displaced_ground_energy() {
        let g = 0.2;
        let fs = FockSystem::new(0.25, vec![FockMode::new(1.0, g), FockMode::new(1.7, 0.15)]).unwrap();
        let expected = -(g * g / 1.0 + 0.15 * 0.15 / 1.7);
        assert!((fs.sector_ground_energy(true) - expected).abs() < 1e-10);
        assert!((fs.sector_ground_energy(false) - expected).abs() < 1e-10);
    }

    #[test]
    fn truncation_is_enforced() {
        let fs = FockSystem::new(0.25, vec![FockMode::new(1.0, 0.1).with_n_max(11)]).unwrap();
        assert!(build_equilibrium(&fs, 5.0).is_ok());
        assert!(matches!(
            build_equilibrium(&fs, 0.5),
            Err(FockError::TruncationInadequate { .. })
        ));
    }

    #[test]
    fn hamiltonian_is_block_diagonal() {
        let fs = small_system(0.2);
        let h = fs.hamiltonian();
        let d = fs.bath_dim();
        assert!((&h - h.transpose()).camax() < 1e-15);
        assert_eq!(h.view((0, d), (d, d)).camax(), 0.0);
        assert_eq!(h.view((d, 0), (d, d)).camax(), 0.0);
    }

    #[test]
    fn collapsing_preparation_factorizes() {
        let fs = small_system(0.2);
        let rho = build_equilibrium(&fs, 4.0).unwrap();
        let b = dir(0.9, 0.4);
        let prepared = apply_preparation(&rho, &PreparationScheme::collapsing(dir(1.2, -0.3), b)).unwrap();
        assert!(prepared.product_residual() < 1e-10);
        let expected = b.state().projector();
        assert!(prepared.reduced_qubit().max_abs_diff(&expected) < 1e-12);
        let bath = rho.block(0, 0) + rho.block(1, 1);
        assert!((prepared.reduced_bath() - bath).camax() < 1e-12);
    }

    #[test]
    fn energy_basis_measurement_removes_coherences() {
        let fs = small_system(0.2);
        let rho = build_equilibrium(&fs, 4.0).unwrap();
        let prepared = apply_preparation(&rho, &PreparationScheme::undisturbed(BlochDirection::north())).unwrap();
        assert!(prepared.block(0, 1).camax() < 1e-15);
        assert!(prepared.block(1, 0).camax() < 1e-15);
    }

    #[test]
    fn non_selective_preparation_preserves_trace() {
        let fs = small_system(0.2);
        let rho = build_equilibrium(&fs, 2.0).unwrap();
        for k in 0..8 {
            let x = k as f64;
            let s = PreparationScheme::general(dir(0.3 * x, x), dir(2.9 - 0.3 * x, -x), dir(0.1 + 0.35 * x, 2.0 * x));
            let p = apply_preparation(&rho, &s).unwrap();
            assert!((p.trace().re - 1.0).abs() < 1e-12);
            assert!(p.hermiticity_residual() < 1e-13);
        }
    }

    #[test]
    fn selective_zero_probability_is_an_error() {
        let fs = FockSystem::new(0.25, vec![FockMode::new(1.0, 0.0).with_n_max(11)]).unwrap();
        let rho = build_equilibrium(&fs, 5.0).unwrap();
        // Projecting twice onto orthogonal states leaves nothing.
        let up = apply_preparation(&rho, &PreparationScheme::selective_along(&BlochDirection::north())).unwrap();
        let down = BlochDirection::north().antipodal();
        let err = apply_preparation(&up, &PreparationScheme::selective_along(&down)).unwrap_err();
        assert!(matches!(err, FockError::ZeroProbability(_)));
    }

    #[test]
    fn spectral_probe_matches_full_evolution() {
        let fs = FockSystem::new(
            0.25,
            vec![FockMode::new(1.0, 0.2).with_n_max(11), FockMode::new(1.7, 0.15).with_n_max(11)],
        )
        .unwrap();
        let rho = build_equilibrium(&fs, 4.0).unwrap();
        let prepared = apply_preparation(&rho, &PreparationScheme::rotated(dir(PI / 3.0, 0.2), dir(1.1, 0.5))).unwrap();
        let probe = CoherenceProbe::new(&fs, &prepared);
        let sz0 = prepared.expectation(&QubitOperator::sigma_z()).re;
        for t in [0.0, 0.7, 2.3, 5.0] {
            let evolved = evolve_full(&fs, &prepared, t);
            let full = evolved.expectation(&QubitOperator::sigma_plus());
            assert!((probe.at(t) - full).norm() < 1e-12, "t={t}");
            assert!((evolved.trace().re - 1.0).abs() < 1e-10);
            assert!(evolved.hermiticity_residual() < 1e-10);
            let sz = evolved.expectation(&QubitOperator::sigma_z()).re;
            assert!((sz - sz0).abs() < 1e-10);
        }
    }

    #[test]
    fn free_qubit_only_rotates() {
        let fs = FockSystem::new(0.25, vec![FockMode::new(1.0, 0.0).with_n_max(11)]).unwrap();
        let rho = build_equilibrium(&fs, 4.0).unwrap();
        let prepared = apply_preparation(&rho, &PreparationScheme::rotated(dir(0.5, 0.0), dir(1.0, 0.0))).unwrap();
        let probe = CoherenceProbe::new(&fs, &prepared);
        let c0 = probe.at(0.0);
        for t in [0.5, 3.0, 10.0] {
            let c = probe.at(t);
            assert!((c.norm() - c0.norm()).abs() < 1e-12);
            assert!((c - c0 * Complex64::from_polar(1.0, 0.25 * t)).norm() < 1e-12);
        }
    }

    #[test]
    fn continuum_bath_is_rejected() {
        let bath = BathSpec::ohmic(1.0).unwrap();
        assert!(matches!(FockSystem::from_discrete(0.25, &bath, 10), Err(FockError::ContinuumBath)));
    }
}
