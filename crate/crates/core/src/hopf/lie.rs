//! Structure constants of the Poincaré Lie algebra and their checks.

use serde::Serialize;

use super::coeff::{fmt_coeff, imag, is_zero, to_f64, zero, Coeff};
use crate::lorentz::{boost_matrix, rotation_matrix, LorentzTransform};

pub const GENERATOR_NAMES: [&str; 10] = ["M1", "M2", "M3", "N1", "N2", "N3", "p0", "p1", "p2", "p3"];

const fn m(i: usize) -> usize {
    i
}
const fn n(i: usize) -> usize {
    3 + i
}
const fn p(mu: usize) -> usize {
    6 + mu
}

fn eps(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// `[e_a, e_b] = Σ_c f[a][b][c] e_c` over rotations `M`, boosts `N` and
/// translations `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieStructure {
    pub f: Vec<Vec<Vec<Coeff>>>,
}

impl Default for LieStructure {
    fn default() -> Self {
        LieStructure::poincare()
    }
}

impl LieStructure {
    /// `[Mᵢ,Mⱼ] = iε Mₖ`, `[Mᵢ,pⱼ] = iε pₖ`, `[Mᵢ,Nⱼ] = iε Nₖ`, `[Mᵢ,p₀] = 0`,
    /// `[Nᵢ,Nⱼ] = −iε Mₖ`, `[Nᵢ,pⱼ] = iδᵢⱼ p₀`, `[Nᵢ,p₀] = i pᵢ`, `[p,p] = 0`.
    pub fn poincare() -> Self {
        let mut f = vec![vec![vec![zero(); 10]; 10]; 10];
        let mut set = |a: usize, b: usize, c: usize, v: Coeff| {
            f[a][b][c] = &f[a][b][c] + &v;
            f[b][a][c] = &f[b][a][c] - &v;
        };
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let e = eps(i, j, k);
                    if e == 0 {
                        continue;
                    }
                    if i < j {
                        set(m(i), m(j), m(k), imag(e, 1));
                        set(n(i), n(j), m(k), imag(-e, 1));
                    }
                    set(m(i), p(j + 1), p(k + 1), imag(e, 1));
                    set(m(i), n(j), n(k), imag(e, 1));
                }
            }
            set(n(i), p(i + 1), p(0), imag(1, 1));
            set(n(i), p(0), p(i + 1), imag(1, 1));
        }
        LieStructure { f }
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[Coeff] {
        &self.f[a][b]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..10).all(|a| (0..10).all(|b| (0..10).all(|c| is_zero(&(&self.f[a][b][c] + &self.f[b][a][c])))))
    }

    /// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]` expanded in the basis.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> Vec<Coeff> {
        let mut out = vec![zero(); 10];
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            for d in 0..10 {
                let inner = &self.f[y][z][d];
                if is_zero(inner) {
                    continue;
                }
                for (e, slot) in out.iter_mut().enumerate() {
                    *slot = &*slot + &(inner * &self.f[x][d][e]);
                }
            }
        }
        out
    }

    /// The matrix `G` with `[X, p_μ] = i Σ_ν G_νμ p_ν` for a generator `X`.
    pub fn translation_action(&self, x: usize) -> [[f64; 4]; 4] {
        let mut g = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                let c = &self.f[x][p(mu)][p(nu)];
                // c = i G  ⇒  G = −i c, real for this algebra
                g[nu][mu] = to_f64(&c.im);
            }
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LieReport {
    pub antisymmetric: bool,
    pub jacobi_failures: Vec<String>,
    /// Max deviation between finite-difference generators of the linear
    /// boosts/rotations and the structure constants.
    pub max_generator_error: f64,
    pub brackets: Vec<String>,
}

impl LieReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.antisymmetric && self.jacobi_failures.is_empty() && self.max_generator_error < tol
    }
}

fn central_difference(f: impl Fn(f64) -> LorentzTransform, h: f64) -> [[f64; 4]; 4] {
    let (a, b) = (f(h).matrix, f(-h).matrix);
    let mut g = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            g[i][j] = (a[i][j] - b[i][j]) / (2.0 * h);
        }
    }
    g
}

/// Checks antisymmetry and every Jacobi identity exactly, and compares the
/// boost and rotation actions on `p` against finite differences of the
/// linear transformations at the identity.
pub fn lie_checks() -> LieReport {
    let s = LieStructure::poincare();
    let mut failures = Vec::new();
    for a in 0..10 {
        for b in a + 1..10 {
            for c in b + 1..10 {
                let j = s.jacobiator(a, b, c);
                if j.iter().any(|v| !is_zero(v)) {
                    failures.push(format!("({}, {}, {})", GENERATOR_NAMES[a], GENERATOR_NAMES[b], GENERATOR_NAMES[c]));
                }
            }
        }
    }
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        let mut axis = [0.0; 3];
        axis[i] = 1.0;
        let boost = central_difference(|t| boost_matrix(axis.map(|v| v * t)), h);
        let rot = central_difference(|t| rotation_matrix(axis.map(|v| v * t)), h);
        for (numeric, gen) in [(boost, n(i)), (rot, m(i))] {
            let exact = s.translation_action(gen);
            for r in 0..4 {
                for c in 0..4 {
                    worst = worst.max((numeric[r][c] - exact[r][c]).abs());
                }
            }
        }
    }
    let mut brackets = Vec::new();
    for a in 0..10 {
        for b in a + 1..10 {
            let terms: Vec<String> = (0..10)
                .filter(|&c| !is_zero(&s.f[a][b][c]))
                .map(|c| format!("{}*{}", fmt_coeff(&s.f[a][b][c]), GENERATOR_NAMES[c]))
                .collect();
            if !terms.is_empty() {
                brackets.push(format!("[{}, {}] = {}", GENERATOR_NAMES[a], GENERATOR_NAMES[b], terms.join(" + ")));
            }
        }
    }
    LieReport { antisymmetric: s.is_antisymmetric(), jacobi_failures: failures, max_generator_error: worst, brackets }
}
