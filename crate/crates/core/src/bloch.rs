//! Single-qubit algebra on the Bloch sphere.
//!
//! Column vectors are ordered `(|1⟩, |0⟩)`: the first amplitude belongs to the
//! excited state `|1⟩ = (1, 0)ᵀ`, the second to the ground state `|0⟩ = (0, 1)ᵀ`.
//! With this ordering `σ₃ = diag(1, −1)` and `σ₊ = |1⟩⟨0|` is the upper
//! off-diagonal entry.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Tolerance for algebraic identities in double precision.
pub const ALGEBRA_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("polar angle {0} is outside [0, π]")]
    PolarAngleOutOfRange(f64),
    #[error("angle is not finite: theta = {theta}, phi = {phi}")]
    NonFinite { theta: f64, phi: f64 },
    #[error("state amplitudes are not normalized: |c1|² + |c0|² = {0}")]
    NotNormalized(f64),
}

/// Wraps an angle into `(−π, π]`.
pub fn normalize_azimuth(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// A direction on the unit sphere given by its Euler angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDirection {
    theta: f64,
    phi: f64,
}

impl BlochDirection {
    /// `theta` must lie in `[0, π]`; `phi` is wrapped into `(−π, π]`.
    pub fn new(theta: f64, phi: f64) -> Result<Self, GeometryError> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(GeometryError::NonFinite { theta, phi });
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(GeometryError::PolarAngleOutOfRange(theta));
        }
        Ok(Self {
            theta,
            phi: normalize_azimuth(phi),
        })
    }

    /// The north pole, `θ = 0`, whose state is `|1⟩`.
    pub fn north() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Cartesian components `(a₁, a₂, a₃)` with `a₁ + i a₂ = sinθ e^{iφ}`, `a₃ = cosθ`.
    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// The opposite direction: `θ → π − θ`, `φ → φ + π`.
    pub fn antipodal(&self) -> Self {
        Self {
            theta: PI - self.theta,
            phi: normalize_azimuth(self.phi + PI),
        }
    }

    /// Normalized state vector pointing along this direction.
    pub fn state(&self) -> QubitState {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let half = 0.5 * self.phi;
        QubitState {
            c1: Complex64::from_polar(c, -half),
            c0: Complex64::from_polar(s, half),
        }
    }

    /// `U(d)` with `U(d)|1⟩ = |d⟩` and `U(d)|0⟩ = |−d⟩`.
    pub fn unitary(&self) -> QubitOperator {
        let (s, c) = (0.5 * self.theta).sin_cos();
        let minus = Complex64::from_polar(1.0, -0.5 * self.phi);
        let plus = Complex64::from_polar(1.0, 0.5 * self.phi);
        QubitOperator::new([[minus * c, -I * minus * s], [plus * s, I * plus * c]])
    }

    /// Spin component `σ(d) = σ₁a₁ + σ₂a₂ + σ₃a₃`.
    pub fn spin_component(&self) -> QubitOperator {
        let [a1, a2, a3] = self.cartesian();
        QubitOperator::new([
            [Complex64::new(a3, 0.0), Complex64::new(a1, -a2)],
            [Complex64::new(a1, a2), Complex64::new(-a3, 0.0)],
        ])
    }
}

impl fmt::Display for BlochDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(θ={:.6}, φ={:.6})", self.theta, self.phi)
    }
}

/// Free-function form of [`BlochDirection::state`].
pub fn state_from_direction(d: &BlochDirection) -> QubitState {
    d.state()
}

/// Free-function form of [`BlochDirection::antipodal`].
pub fn antipodal_direction(d: &BlochDirection) -> BlochDirection {
    d.antipodal()
}

/// Free-function form of [`BlochDirection::unitary`].
pub fn direction_unitary(d: &BlochDirection) -> QubitOperator {
    d.unitary()
}

/// `U(b, a) = U(b) U†(a)`, which carries `|a⟩` to `|b⟩` and `|−a⟩` to `|−b⟩`.
pub fn relative_unitary(b: &BlochDirection, a: &BlochDirection) -> QubitOperator {
    b.unitary() * a.unitary().dagger()
}

/// Free-function form of [`BlochDirection::spin_component`].
pub fn spin_component(d: &BlochDirection) -> QubitOperator {
    d.spin_component()
}

/// Pure qubit state `c1|1⟩ + c0|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    c1: Complex64,
    c0: Complex64,
}

impl QubitState {
    pub fn new(c1: Complex64, c0: Complex64) -> Result<Self, GeometryError> {
        let norm = c1.norm_sqr() + c0.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > ALGEBRA_TOL {
            return Err(GeometryError::NotNormalized(norm));
        }
        Ok(Self { c1, c0 })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(c1: Complex64, c0: Complex64) -> Result<Self, GeometryError> {
        let norm = (c1.norm_sqr() + c0.norm_sqr()).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(GeometryError::NotNormalized(norm * norm));
        }
        Ok(Self {
            c1: c1 / norm,
            c0: c0 / norm,
        })
    }

    pub fn excited() -> Self {
        Self { c1: ONE, c0: ZERO }
    }

    pub fn ground() -> Self {
        Self { c1: ZERO, c0: ONE }
    }

    /// Amplitude on `|1⟩`.
    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    /// Amplitude on `|0⟩`.
    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.c1, self.c0]
    }

    pub fn inner(&self, other: &QubitState) -> Complex64 {
        self.c1.conj() * other.c1 + self.c0.conj() * other.c0
    }

    pub fn projector(&self) -> QubitOperator {
        QubitOperator::outer(self, self)
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, op: &QubitOperator) -> Complex64 {
        self.inner(&op.apply(self))
    }
}

/// A 2×2 complex matrix acting on the qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitOperator {
    m: [[Complex64; 2]; 2],
}

impl QubitOperator {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn zero() -> Self {
        Self::new([[ZERO; 2]; 2])
    }

    pub fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn sigma_x() -> Self {
        Self::new([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn sigma_y() -> Self {
        Self::new([[ZERO, -I], [I, ZERO]])
    }

    pub fn sigma_z() -> Self {
        Self::new([[ONE, ZERO], [ZERO, -ONE]])
    }

    /// `σ₊ = (σ₁ + iσ₂)/2 = |1⟩⟨0|`.
    pub fn sigma_plus() -> Self {
        Self::new([[ZERO, ONE], [ZERO, ZERO]])
    }

    /// `σ₋ = (σ₁ − iσ₂)/2 = |0⟩⟨1|`.
    pub fn sigma_minus() -> Self {
        Self::new([[ZERO, ZERO], [ONE, ZERO]])
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &QubitState, v: &QubitState) -> Self {
        let (u, v) = (u.amplitudes(), v.amplitudes());
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = u[i] * v[j].conj();
            }
        }
        Self::new(m)
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn dagger(&self) -> Self {
        let m = &self.m;
        Self::new([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|e| *e *= z);
        Self::new(m)
    }

    pub fn apply(&self, v: &QubitState) -> QubitState {
        let x = v.amplitudes();
        QubitState {
            c1: self.m[0][0] * x[0] + self.m[0][1] * x[1],
            c0: self.m[1][0] * x[0] + self.m[1][1] * x[1],
        }
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &QubitOperator) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |(U†U − I)ᵢⱼ|`.
    pub fn unitarity_residual(&self) -> f64 {
        (self.dagger() * *self).max_abs_diff(&Self::identity())
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }
}

impl Mul for QubitOperator {
    type Output = QubitOperator;

    fn mul(self, rhs: QubitOperator) -> QubitOperator {
        let (a, b) = (&self.m, &rhs.m);
        let mut m = [[ZERO; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        QubitOperator::new(m)
    }
}

impl Add for QubitOperator {
    type Output = QubitOperator;

    fn add(self, rhs: QubitOperator) -> QubitOperator {
        let mut m = self.m;
        m.iter_mut()
            .flatten()
            .zip(rhs.m.iter().flatten())
            .for_each(|(a, b)| *a += b);
        QubitOperator::new(m)
    }
}

impl Sub for QubitOperator {
    type Output = QubitOperator;

    fn sub(self, rhs: QubitOperator) -> QubitOperator {
        self + rhs.scale(-ONE)
    }
}

impl std::iter::Sum for QubitOperator {
    fn sum<It: Iterator<Item = QubitOperator>>(iter: It) -> QubitOperator {
        iter.fold(QubitOperator::zero(), Add::add)
    }
}
