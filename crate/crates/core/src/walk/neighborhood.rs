//! Position-space decomposition `A_k = Σ_y e^{ik·y} A_y` over the eight
//! body-centred neighbours `y = (±1,±1,±1)/√3`.

use num_complex::Complex64;

use super::{Chirality, WaveVector, SQRT3};
use crate::spinor::SpinorMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Trig {
    Cos,
    Sin,
}

/// The eight neighbour displacements and their transition matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct NeighborhoodScheme {
    /// Integer sign vectors `σ ∈ {±1}³`; the physical displacement is `σ/√3`.
    pub signs: Vec<[i32; 3]>,
    pub matrices: Vec<SpinorMatrix>,
}

impl NeighborhoodScheme {
    pub fn displacement(&self, j: usize) -> [f64; 3] {
        self.signs[j].map(|s| s as f64 / SQRT3)
    }

    /// `Σ_y e^{ik·y} A_y`.
    pub fn reconstruct(&self, k: WaveVector) -> SpinorMatrix {
        let k = k.to_array();
        self.signs.iter().zip(&self.matrices).fold(SpinorMatrix::zero(), |acc, (s, m)| {
            let phase: f64 = (0..3).map(|a| k[a] * s[a] as f64 / SQRT3).sum();
            acc + m.scale(Complex64::from_polar(1.0, phase))
        })
    }
}

/// Each term of `λ I − i n·σ±` as a matrix coefficient times a product of
/// one trigonometric factor per axis.
fn operator_terms(c: Chirality) -> Vec<(SpinorMatrix, [Trig; 3])> {
    use Trig::{Cos as C, Sin as S};
    let g = match c {
        Chirality::Plus => 1.0,
        Chirality::Minus => -1.0,
    };
    let id = SpinorMatrix::identity();
    let sig = c.sigma().map(|s| s.scale(Complex64::new(0.0, -1.0)));
    let r = |v: f64| Complex64::new(v, 0.0);
    vec![
        (id, [C, C, C]),
        (id.scale(r(-g)), [S, S, S]),
        (sig[0], [S, C, C]),
        (sig[0].scale(r(g)), [C, S, S]),
        (sig[1], [C, S, C]),
        (sig[1].scale(r(-g)), [S, C, S]),
        (sig[2], [C, C, S]),
        (sig[2].scale(r(g)), [S, S, C]),
    ]
}

/// Expands every `cos`/`sin` into exponentials and collects the coefficient
/// of each `e^{i σ·k/√3}`.
pub fn neighborhood_matrices(c: Chirality) -> NeighborhoodScheme {
    let terms = operator_terms(c);
    let mut signs = Vec::with_capacity(8);
    let mut matrices = Vec::with_capacity(8);
    for sx in [1, -1] {
        for sy in [1, -1] {
            for sz in [1, -1] {
                let s = [sx, sy, sz];
                let mut m = SpinorMatrix::zero();
                for (coef, f) in &terms {
                    // cos → 1/2, sin → σ/(2i)
                    let w = (0..3).fold(Complex64::new(1.0, 0.0), |acc, a| {
                        acc * match f[a] {
                            Trig::Cos => Complex64::new(0.5, 0.0),
                            Trig::Sin => Complex64::new(0.0, -0.5 * s[a] as f64),
                        }
                    });
                    m = m + coef.scale(w);
                }
                signs.push(s);
                matrices.push(m);
            }
        }
    }
    NeighborhoodScheme { signs, matrices }
}
