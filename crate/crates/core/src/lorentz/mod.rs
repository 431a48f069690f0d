//! Linear Lorentz transformations, their two-component spinor
//! representatives, and the nonlinear action on the walk's mass shell.

mod deformation;
mod symmetry;

pub use deformation::{
    deformation_d, deformation_d_inverse, deformed_boost, deformed_transform, region_frame, safe_region_min_det,
    DeformationConfig, GChoice, OnShellPoint, RegionFrame, TabulatedG,
};
pub use symmetry::{
    check_symmetry, check_symmetry_swapped, sample_beta, sample_on_shell_point, write_boost_scan_csv, BoostScanRow,
    SymmetryReport,
};

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spinor::SpinorMatrix;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LorentzError {
    #[error("input is off the light cone: p·p = {0:e}")]
    OffShellInput(f64),
    #[error("point is off the walk shell: |sin²ω − |n|²| = {0:e}")]
    NotOnShell(f64),
    #[error("Newton solve did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("solution |δ| = {norm} lies outside the safe radius {radius}")]
    OutsideSafeRegion { norm: f64, radius: f64 },
    #[error("p₀ = {0} is outside the image of the deformation map")]
    OutsideImage(f64),
    #[error("region index {0} out of range 0..=3")]
    InvalidRegion(usize),
    #[error("Jacobian of n is singular inside the safe ball (min det {0:e})")]
    SingularSafeRegion(f64),
    #[error("invalid g table: {0}")]
    InvalidG(String),
    #[error("config error: {0}")]
    Config(String),
}

/// A real 4-vector `(p₀, p⃗)` with the `(+,−,−,−)` pairing.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
}

impl FourVector {
    pub const fn new(p0: f64, p1: f64, p2: f64, p3: f64) -> Self {
        FourVector { p0, p1, p2, p3 }
    }

    pub fn from_parts(p0: f64, p: [f64; 3]) -> Self {
        FourVector::new(p0, p[0], p[1], p[2])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.p0, self.p1, self.p2, self.p3]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        FourVector::new(a[0], a[1], a[2], a[3])
    }

    pub fn spatial(self) -> [f64; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn minkowski_sq(self) -> f64 {
        self.p0 * self.p0 - self.p1 * self.p1 - self.p2 * self.p2 - self.p3 * self.p3
    }

    /// `|p·p| < 1e−10 (1 + p₀²)`.
    pub fn is_null(self) -> bool {
        self.minkowski_sq().abs() < 1e-10 * (1.0 + self.p0 * self.p0)
    }

    pub fn scale(self, s: f64) -> Self {
        FourVector::from_array(self.to_array().map(|v| v * s))
    }

    pub fn max_abs_diff(self, o: FourVector) -> f64 {
        (0..4).map(|i| (self.to_array()[i] - o.to_array()[i]).abs()).fold(0.0, f64::max)
    }

    /// `p₀ I + p⃗·σ`.
    pub fn to_hermitian(self) -> SpinorMatrix {
        SpinorMatrix::identity().scale(self.p0.into()) + SpinorMatrix::dot_sigma_real(self.spatial())
    }

    /// Inverse of [`FourVector::to_hermitian`] (imaginary parts are dropped).
    pub fn from_hermitian(x: &SpinorMatrix) -> Self {
        let p0 = 0.5 * (x.a11 + x.a22).re;
        let p3 = 0.5 * (x.a11 - x.a22).re;
        let p1 = 0.5 * (x.a12 + x.a21).re;
        let p2 = 0.5 * (x.a21 - x.a12).im;
        FourVector::new(p0, p1, p2, p3)
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.p0 + o.p0, self.p1 + o.p1, self.p2 + o.p2, self.p3 + o.p3)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.p0 - o.p0, self.p1 - o.p1, self.p2 - o.p2, self.p3 - o.p3)
    }
}

pub type Matrix4 = [[f64; 4]; 4];

fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut c = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// A proper orthochronous Lorentz transformation, carried together with a
/// right-handed `SL(2,C)` lift so spinor representatives stay available
/// after composition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzTransform {
    pub matrix: Matrix4,
    spinor: SpinorMatrix,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        LorentzTransform::from_spinor(SpinorMatrix::identity())
    }

    /// The transformation with right-handed lift `exp((β − iθ)·σ/2)`.
    pub fn new(beta: [f64; 3], theta: [f64; 3]) -> Self {
        LorentzTransform::from_spinor(spinor_rep(beta, theta, Handedness::Right).matrix)
    }

    /// Vector action of `A ∈ SL(2,C)`: `Λ^μ_ν = ½ tr(σ_μ A σ_ν A†)`, so
    /// that `p₀I + p⃗·σ ↦ A (p₀I + p⃗·σ) A†`.
    pub fn from_spinor(a: SpinorMatrix) -> Self {
        let basis = {
            let [x, y, z] = SpinorMatrix::pauli();
            [SpinorMatrix::identity(), x, y, z]
        };
        let ad = a.adjoint();
        let mut m = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                m[mu][nu] = 0.5 * (basis[mu] * a * basis[nu] * ad).trace().re;
            }
        }
        LorentzTransform { matrix: m, spinor: a }
    }

    /// The right-handed lift `Λ`.
    pub fn right(&self) -> SpinorMatrix {
        self.spinor
    }

    /// The left-handed lift `Λ̃ = (Λ†)⁻¹`.
    pub fn left(&self) -> SpinorMatrix {
        self.spinor.adjoint().inverse().expect("SL(2,C) element is invertible")
    }

    pub fn apply(&self, p: FourVector) -> FourVector {
        let v = p.to_array();
        FourVector::from_array(self.matrix.map(|row| (0..4).map(|j| row[j] * v[j]).sum()))
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        LorentzTransform { matrix: mat_mul(&self.matrix, &other.matrix), spinor: self.spinor * other.spinor }
    }

    pub fn inverse(&self) -> LorentzTransform {
        LorentzTransform::from_spinor(self.spinor.inverse().expect("SL(2,C) element is invertible"))
    }

    /// `max |LᵀηL − η|`.
    pub fn eta_defect(&self) -> f64 {
        let l = &self.matrix;
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let v: f64 = (0..4).map(|k| l[k][i] * ETA[k] * l[k][j]).sum();
                let target = if i == j { ETA[i] } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    pub fn det(&self) -> f64 {
        det4(&self.matrix)
    }

    /// Rapidity and rotation vectors `(β, θ)` with `Λ = exp((β − iθ)·σ/2)`.
    ///
    /// Recovered from the stored lift; valid away from `Λ = −I`-type points
    /// where the logarithm is singular.
    pub fn parameters(&self) -> ([f64; 3], [f64; 3]) {
        let a = self.spinor;
        let ch = a.trace() / 2.0;
        let s = ch.acosh();
        let factor = if s.norm() < 1e-8 { Complex64::new(1.0, 0.0) } else { s / s.sinh() };
        // A − cosh(s) I = sinh(s)/s · (z·σ/2)
        let b = (a - SpinorMatrix::identity().scale(ch)).scale(factor * 2.0);
        let z = [0.5 * (b.a12 + b.a21), 0.5 * (b.a21 - b.a12) * Complex64::new(0.0, -1.0), 0.5 * (b.a11 - b.a22)];
        (z.map(|v| v.re), z.map(|v| -v.im))
    }

    pub fn max_abs_diff(&self, other: &LorentzTransform) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.matrix[i][j] - other.matrix[i][j]).abs());
            }
        }
        worst
    }
}

impl Mul for LorentzTransform {
    type Output = LorentzTransform;
    fn mul(self, o: LorentzTransform) -> LorentzTransform {
        self.compose(&o)
    }
}

fn det4(m: &Matrix4) -> f64 {
    let minor = |skip_col: usize| -> f64 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip_col).collect();
        let r = |i: usize, j: usize| m[i][cols[j]];
        r(1, 0) * (r(2, 1) * r(3, 2) - r(2, 2) * r(3, 1)) - r(1, 1) * (r(2, 0) * r(3, 2) - r(2, 2) * r(3, 0))
            + r(1, 2) * (r(2, 0) * r(3, 1) - r(2, 1) * r(3, 0))
    };
    (0..4).map(|c| if c % 2 == 0 { 1.0 } else { -1.0 } * m[0][c] * minor(c)).sum()
}

/// Pure boost with rapidity `|β|` along `β̂`, written out in closed form.
pub fn boost_matrix(beta: [f64; 3]) -> LorentzTransform {
    let eta = (beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2]).sqrt();
    let spinor = spinor_rep(beta, [0.0; 3], Handedness::Right).matrix;
    if eta == 0.0 {
        return LorentzTransform { matrix: identity4(), spinor };
    }
    let u = beta.map(|b| b / eta);
    let (ch, sh) = (eta.cosh(), eta.sinh());
    let mut m = identity4();
    m[0][0] = ch;
    for i in 0..3 {
        m[0][i + 1] = sh * u[i];
        m[i + 1][0] = sh * u[i];
        for j in 0..3 {
            m[i + 1][j + 1] += (ch - 1.0) * u[i] * u[j];
        }
    }
    LorentzTransform { matrix: m, spinor }
}

/// Rotation by `|θ|` about `θ̂`.
pub fn rotation_matrix(theta: [f64; 3]) -> LorentzTransform {
    LorentzTransform::new([0.0; 3], theta)
}

fn identity4() -> Matrix4 {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Handedness {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorRep {
    pub handedness: Handedness,
    pub matrix: SpinorMatrix,
}

/// Right: `exp((β − iθ)·σ/2)`. Left: `exp((−β − iθ)·σ/2)`.
pub fn spinor_rep(beta: [f64; 3], theta: [f64; 3], h: Handedness) -> SpinorRep {
    let sign = match h {
        Handedness::Right => 1.0,
        Handedness::Left => -1.0,
    };
    let z = [0, 1, 2].map(|i| Complex64::new(sign * beta[i] / 2.0, -theta[i] / 2.0));
    SpinorRep { handedness: h, matrix: SpinorMatrix::exp_dot_sigma(z) }
}
