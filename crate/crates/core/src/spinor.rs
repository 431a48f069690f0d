//! 2×2 complex matrices acting on the internal (spinor) degree of freedom.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 complex matrix, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorMatrix {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl SpinorMatrix {
    pub const fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        SpinorMatrix { a11, a12, a21, a22 }
    }

    pub const fn zero() -> Self {
        SpinorMatrix::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn identity() -> Self {
        SpinorMatrix::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn sigma_x() -> Self {
        SpinorMatrix::new(ZERO, ONE, ONE, ZERO)
    }

    pub const fn sigma_y() -> Self {
        SpinorMatrix::new(ZERO, Complex64::new(0.0, -1.0), I, ZERO)
    }

    pub const fn sigma_z() -> Self {
        SpinorMatrix::new(ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0))
    }

    /// The three Pauli matrices `(σx, σy, σz)`.
    pub const fn pauli() -> [SpinorMatrix; 3] {
        [Self::sigma_x(), Self::sigma_y(), Self::sigma_z()]
    }

    /// `v · σ` for a complex 3-vector.
    pub fn dot_sigma(v: [Complex64; 3]) -> Self {
        SpinorMatrix::new(v[2], v[0] - I * v[1], v[0] + I * v[1], -v[2])
    }

    /// `v · σ` for a real 3-vector.
    pub fn dot_sigma_real(v: [f64; 3]) -> Self {
        Self::dot_sigma([v[0].into(), v[1].into(), v[2].into()])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        SpinorMatrix::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn transpose(&self) -> Self {
        SpinorMatrix::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn conj(&self) -> Self {
        SpinorMatrix::new(self.a11.conj(), self.a12.conj(), self.a21.conj(), self.a22.conj())
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    /// Inverse via the adjugate. Returns `None` for a (numerically) singular matrix.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() < 1e-300 {
            return None;
        }
        let inv = d.inv();
        Some(SpinorMatrix::new(self.a22 * inv, -self.a12 * inv, -self.a21 * inv, self.a11 * inv))
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1]]
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A - B|` entrywise.
    pub fn max_diff(&self, other: &SpinorMatrix) -> f64 {
        (*self - *other).max_abs()
    }

    /// `exp(z · σ)` for a complex 3-vector `z`, using
    /// `exp(z·σ) = cosh(s) I + sinh(s)/s (z·σ)` with `s² = z·z`.
    pub fn exp_dot_sigma(z: [Complex64; 3]) -> Self {
        let s2 = z[0] * z[0] + z[1] * z[1] + z[2] * z[2];
        let s = s2.sqrt();
        let (ch, sh_over_s) = if s.norm() < 1e-8 {
            // series: sinh(s)/s = 1 + s²/6 + s⁴/120
            (ONE + s2 / 2.0 + s2 * s2 / 24.0, ONE + s2 / 6.0 + s2 * s2 / 120.0)
        } else {
            (s.cosh(), s.sinh() / s)
        };
        Self::identity().scale(ch) + Self::dot_sigma(z).scale(sh_over_s)
    }
}

impl Add for SpinorMatrix {
    type Output = SpinorMatrix;
    fn add(self, o: SpinorMatrix) -> SpinorMatrix {
        SpinorMatrix::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for SpinorMatrix {
    type Output = SpinorMatrix;
    fn sub(self, o: SpinorMatrix) -> SpinorMatrix {
        SpinorMatrix::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Neg for SpinorMatrix {
    type Output = SpinorMatrix;
    fn neg(self) -> SpinorMatrix {
        self.scale(-ONE)
    }
}

impl Mul for SpinorMatrix {
    type Output = SpinorMatrix;
    fn mul(self, o: SpinorMatrix) -> SpinorMatrix {
        SpinorMatrix::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

impl fmt::Display for SpinorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let [x, y, z] = SpinorMatrix::pauli();
        assert_eq!(x * y, z.scale(I));
        assert_eq!(y * z, x.scale(I));
        assert_eq!(z * x, y.scale(I));
        for s in [x, y, z] {
            assert_eq!(s * s, SpinorMatrix::identity());
        }
    }

    #[test]
    fn exp_matches_series() {
        let z = [Complex64::new(0.3, -0.2), Complex64::new(-0.1, 0.4), Complex64::new(0.25, 0.05)];
        let a = SpinorMatrix::dot_sigma(z);
        // Taylor series to high order
        let mut term = SpinorMatrix::identity();
        let mut sum = SpinorMatrix::identity();
        for k in 1..30 {
            term = (term * a).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum + term;
        }
        assert!(SpinorMatrix::exp_dot_sigma(z).max_diff(&sum) < 1e-14);
        // unit determinant since z·σ is traceless
        assert!((SpinorMatrix::exp_dot_sigma(z).det() - ONE).norm() < 1e-14);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = SpinorMatrix::new(
            Complex64::new(1.0, 2.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(-0.3, 0.1),
            Complex64::new(2.0, -1.0),
        );
        let inv = m.inverse().unwrap();
        assert!((m * inv).max_diff(&SpinorMatrix::identity()) < 1e-15);
        assert!(SpinorMatrix::zero().inverse().is_none());
    }
}
