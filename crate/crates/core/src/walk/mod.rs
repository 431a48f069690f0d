//! The Weyl quantum walk on the body-centred cubic lattice.
//!
//! In momentum space the walk acts as the 2×2 unitary
//! `A±(k) = λ±(k) I − i n±(k)·σ±`, where `σ+ = σ` and `σ- = σᵀ`, and the
//! trigonometric coefficients use `c_α = cos(k_α/√3)`, `s_α = sin(k_α/√3)`.
//! With these coordinates the small-`k` dispersion is `ω ≈ |k|/√3`; the
//! `*_rescaled` helpers take `k̃ = k/√3` instead, for which `ω ≈ |k̃|`.

mod export;
mod lattice;
mod neighborhood;

pub use export::{dispersion_grid, write_dispersion_csv, DispersionRow};
pub use lattice::{unwrap_position, LatticeState, PacketSpec, WalkError};
pub use neighborhood::{neighborhood_matrices, NeighborhoodScheme};

use std::ops::{Add, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::spinor::SpinorMatrix;

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Below this `|n|` the two eigenmodes are treated as degenerate.
const DEGENERATE_N: f64 = 1e-14;

/// A wave vector `k`, in units of inverse lattice spacing.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct WaveVector {
    pub kx: f64,
    pub ky: f64,
    pub kz: f64,
}

impl WaveVector {
    pub const fn new(kx: f64, ky: f64, kz: f64) -> Self {
        WaveVector { kx, ky, kz }
    }

    pub const fn zero() -> Self {
        WaveVector::new(0.0, 0.0, 0.0)
    }

    pub fn from_array(k: [f64; 3]) -> Self {
        WaveVector::new(k[0], k[1], k[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.kx, self.ky, self.kz]
    }

    /// Builds the lattice wave vector from rescaled coordinates `k̃ = k/√3`.
    pub fn from_rescaled(kt: [f64; 3]) -> Self {
        WaveVector::new(kt[0] * SQRT3, kt[1] * SQRT3, kt[2] * SQRT3)
    }

    pub fn rescaled(self) -> [f64; 3] {
        [self.kx / SQRT3, self.ky / SQRT3, self.kz / SQRT3]
    }

    pub fn scale(self, s: f64) -> Self {
        WaveVector::new(self.kx * s, self.ky * s, self.kz * s)
    }

    pub fn norm(self) -> f64 {
        (self.kx * self.kx + self.ky * self.ky + self.kz * self.kz).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.kx.is_finite() && self.ky.is_finite() && self.kz.is_finite()
    }

    /// Whether `k` lies in the rhombic-dodecahedral Brillouin zone
    /// `|k_α ± k_β| ≤ √3π` (with a small tolerance on the faces).
    pub fn in_zone(self) -> bool {
        let k = self.to_array();
        let bound = SQRT3 * std::f64::consts::PI * (1.0 + 1e-12);
        (0..3).all(|a| (a + 1..3).all(|b| (k[a] + k[b]).abs() <= bound && (k[a] - k[b]).abs() <= bound))
    }

    /// Translates `k` by the nearest reciprocal-lattice vector, landing in the
    /// first Brillouin zone.
    ///
    /// The reciprocal lattice is `√3π · D3` (integer vectors with even
    /// coordinate sum), whose Voronoi cell is the rhombic dodecahedron.
    pub fn reduce_to_zone(self) -> Self {
        let scale = SQRT3 * std::f64::consts::PI;
        let u = self.to_array().map(|v| v / scale);
        let mut r = u.map(f64::round);
        let parity = (r[0] + r[1] + r[2]).rem_euclid(2.0);
        if parity != 0.0 {
            // re-round the worst coordinate the other way
            let (worst, _) =
                (0..3).map(|i| (i, (u[i] - r[i]).abs())).fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            r[worst] += if u[worst] > r[worst] { 1.0 } else { -1.0 };
        }
        WaveVector::new(self.kx - r[0] * scale, self.ky - r[1] * scale, self.kz - r[2] * scale)
    }
}

impl Add for WaveVector {
    type Output = WaveVector;
    fn add(self, o: WaveVector) -> WaveVector {
        WaveVector::new(self.kx + o.kx, self.ky + o.ky, self.kz + o.kz)
    }
}

impl Sub for WaveVector {
    type Output = WaveVector;
    fn sub(self, o: WaveVector) -> WaveVector {
        WaveVector::new(self.kx - o.kx, self.ky - o.ky, self.kz - o.kz)
    }
}

/// Which of the two admissible walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    pub fn flip(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Chirality::Plus => 1.0,
            Chirality::Minus => -1.0,
        }
    }

    /// `σ` for `Plus`, `σᵀ` for `Minus`.
    pub fn sigma(self) -> [SpinorMatrix; 3] {
        let p = SpinorMatrix::pauli();
        match self {
            Chirality::Plus => p,
            Chirality::Minus => p.map(|s| s.transpose()),
        }
    }

    /// `v · σ±`.
    pub fn dot_sigma(self, v: [f64; 3]) -> SpinorMatrix {
        match self {
            Chirality::Plus => SpinorMatrix::dot_sigma_real(v),
            // σyᵀ = −σy
            Chirality::Minus => SpinorMatrix::dot_sigma_real([v[0], -v[1], v[2]]),
        }
    }
}

impl std::str::FromStr for Chirality {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" | "+" => Ok(Chirality::Plus),
            "minus" | "-" => Ok(Chirality::Minus),
            other => Err(format!("unknown chirality '{other}' (expected plus|minus)")),
        }
    }
}

/// The four points `k_0..k_3` where the walk reduces to a Weyl equation.
pub fn special_point(i: usize) -> WaveVector {
    let h = SQRT3 * std::f64::consts::PI / 2.0;
    match i {
        0 => WaveVector::zero(),
        1 => WaveVector::new(h, h, h),
        2 => WaveVector::new(-h, -h, -h),
        3 => WaveVector::new(2.0 * h, 0.0, 0.0),
        _ => panic!("special point index {i} out of range 0..=3"),
    }
}

fn trig(k: WaveVector) -> ([f64; 3], [f64; 3]) {
    let k = k.to_array();
    (k.map(|v| (v / SQRT3).cos()), k.map(|v| (v / SQRT3).sin()))
}

/// `n±(k)`.
pub fn n_vector(k: WaveVector, c: Chirality) -> [f64; 3] {
    let ([cx, cy, cz], [sx, sy, sz]) = trig(k);
    let g = c.sign();
    [sx * cy * cz + g * cx * sy * sz, cx * sy * cz - g * sx * cy * sz, cx * cy * sz + g * sx * sy * cz]
}

/// `λ±(k)`.
pub fn lambda_scalar(k: WaveVector, c: Chirality) -> f64 {
    let ([cx, cy, cz], [sx, sy, sz]) = trig(k);
    cx * cy * cz - c.sign() * sx * sy * sz
}

/// Jacobian `∂n_i/∂k_j` (row `i`, column `j`).
pub fn n_jacobian(k: WaveVector, c: Chirality) -> [[f64; 3]; 3] {
    let (cs, ss) = trig(k);
    let g = c.sign();
    // each term is coef * f_x f_y f_z with f in {c, s}
    let terms: [[(f64, [bool; 3]); 2]; 3] = [
        [(1.0, [false, true, true]), (g, [true, false, false])],
        [(1.0, [true, false, true]), (-g, [false, true, false])],
        [(1.0, [true, true, false]), (g, [false, false, true])],
    ];
    // `true` marks a cosine factor
    let val = |a: usize, is_cos: bool| if is_cos { cs[a] } else { ss[a] };
    let der = |a: usize, is_cos: bool| if is_cos { -ss[a] / SQRT3 } else { cs[a] / SQRT3 };
    let mut jac = [[0.0; 3]; 3];
    for (i, row) in terms.iter().enumerate() {
        for &(coef, f) in row {
            for j in 0..3 {
                let mut prod = coef;
                for a in 0..3 {
                    prod *= if a == j { der(a, f[a]) } else { val(a, f[a]) };
                }
                jac[i][j] += prod;
            }
        }
    }
    jac
}

/// Gradient of `λ±(k)`.
fn lambda_gradient(k: WaveVector, c: Chirality) -> [f64; 3] {
    let ([cx, cy, cz], [sx, sy, sz]) = trig(k);
    let g = c.sign();
    let r = 1.0 / SQRT3;
    [
        r * (-sx * cy * cz - g * cx * sy * sz),
        r * (-cx * sy * cz - g * sx * cy * sz),
        r * (-cx * cy * sz - g * sx * sy * cz),
    ]
}

/// The walk operator `A±(k) = λ I − i n·σ±`.
pub fn walk_operator_k(k: WaveVector, c: Chirality) -> SpinorMatrix {
    let n = n_vector(k, c);
    let lam = lambda_scalar(k, c);
    SpinorMatrix::identity().scale(lam.into()) - c.dot_sigma(n).scale(Complex64::new(0.0, 1.0))
}

/// Positive-frequency branch `ω = arccos λ(k) ∈ [0, π]`, which satisfies
/// `sin²ω = |n(k)|²`.
pub fn dispersion(k: WaveVector, c: Chirality) -> f64 {
    // atan2 keeps full relative precision near ω = 0 where acos does not
    let n = n_vector(k, c);
    (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt().atan2(lambda_scalar(k, c))
}

/// [`dispersion`] taking rescaled coordinates `k̃ = k/√3`.
pub fn dispersion_rescaled(kt: [f64; 3], c: Chirality) -> f64 {
    dispersion(WaveVector::from_rescaled(kt), c)
}

/// `∇_k ω` on the positive branch. Undefined (returns NaN) where `sin ω = 0`.
pub fn group_velocity(k: WaveVector, c: Chirality) -> [f64; 3] {
    let s = dispersion(k, c).sin();
    lambda_gradient(k, c).map(|g| -g / s)
}

/// One eigenmode of the walk at fixed `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenMode {
    pub omega: f64,
    pub spinor: [Complex64; 2],
}

/// Unit eigenvector of `m·σ` (|m| = 1) with eigenvalue +1.
fn plus_eigenvector(m: [f64; 3]) -> [Complex64; 2] {
    let v1 = [Complex64::new(1.0 + m[2], 0.0), Complex64::new(m[0], m[1])];
    let v2 = [Complex64::new(m[0], -m[1]), Complex64::new(1.0 - m[2], 0.0)];
    let norm = |v: &[Complex64; 2]| (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let (v, n) = if norm(&v1) >= norm(&v2) { (v1, norm(&v1)) } else { (v2, norm(&v2)) };
    [v[0] / n, v[1] / n]
}

/// Both eigenmodes of `A±(k)`.
///
/// The first entry has `ω = arccos λ ≥ 0`, the second `−arccos λ`. Each
/// satisfies `(sin ω I − n·σ±) ψ = 0` and `A±(k) ψ = e^{−iω} ψ`. At a
/// degenerate point (`n = 0`) the canonical basis is returned with
/// `ω = arccos λ` for both.
pub fn eigenmodes(k: WaveVector, c: Chirality) -> [EigenMode; 2] {
    let n = n_vector(k, c);
    let omega = dispersion(k, c);
    let nn = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if nn < DEGENERATE_N {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        return [EigenMode { omega, spinor: [one, zero] }, EigenMode { omega, spinor: [zero, one] }];
    }
    let unit = n.map(|v| v / nn);
    // n·σᵀ = n'·σ with n' = (nx, −ny, nz)
    let m = match c {
        Chirality::Plus => unit,
        Chirality::Minus => [unit[0], -unit[1], unit[2]],
    };
    [
        EigenMode { omega, spinor: plus_eigenvector(m) },
        EigenMode { omega: -omega, spinor: plus_eigenvector(m.map(|v| -v)) },
    ]
}

/// `‖(sin ω I − n·σ±) ψ‖` for a candidate mode.
pub fn kernel_residual(k: WaveVector, c: Chirality, mode: &EigenMode) -> f64 {
    let n = n_vector(k, c);
    let op = SpinorMatrix::identity().scale(mode.omega.sin().into()) - c.dot_sigma(n);
    let r = op.apply(mode.spinor);
    (r[0].norm_sqr() + r[1].norm_sqr()).sqrt()
}
