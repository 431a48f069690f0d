//! Nonlinear changes of translation generators `p ↦ p' = M(p)`.

use serde::Serialize;

use super::coeff::{from_rat, is_zero, one, real, Coeff, Rat};
use super::momentum::{generators, MomentumPoly, Mono};
use super::HopfError;
use crate::walk::Chirality;

/// A change of generators with `J(0) = I`, together with its inverse to the
/// working truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisMap {
    pub name: String,
    /// `p'_μ` as polynomials in the old generators.
    pub forward: [MomentumPoly; 4],
    /// `p_μ` as polynomials in the new generators.
    pub inverse: [MomentumPoly; 4],
    pub generator_names: [String; 4],
    pub coordinate_names: [String; 4],
}

fn default_generator_names() -> [String; 4] {
    ["p0", "p1", "p2", "p3"].map(String::from)
}

fn default_coordinate_names() -> [String; 4] {
    ["x0", "x1", "x2", "x3"].map(String::from)
}

/// Rejects anything but `p'_μ = p_μ + (terms of degree ≥ 2)`.
fn check_tangent_identity(forward: &[MomentumPoly; 4]) -> Result<(), HopfError> {
    for (mu, f) in forward.iter().enumerate() {
        for (m, c) in f.terms() {
            let expected = if m.kappa == 0 && m.linear_index() == Some(mu) { one() } else { Coeff::default() };
            if m.degree() <= 1 && *c != expected {
                return Err(HopfError::InvalidMap(format!(
                    "J(0) ≠ I: component {mu} has coefficient {} on {}",
                    super::coeff::fmt_coeff(c),
                    MomentumPoly::term(one(), *m)
                )));
            }
        }
        if f.coeff(&Mono::generator(mu)) != one() {
            return Err(HopfError::InvalidMap(format!("J(0) ≠ I: component {mu} lacks its linear term")));
        }
    }
    Ok(())
}

impl BasisMap {
    /// Validates `J(0) = I` and computes the inverse by fixed-point
    /// substitution `p = p' − H(p)` with `H = M − id`.
    pub fn new(name: &str, forward: [MomentumPoly; 4]) -> Result<Self, HopfError> {
        check_tangent_identity(&forward)?;
        let gens = generators();
        let higher: Vec<MomentumPoly> = forward.iter().zip(&gens).map(|(f, p)| f - p).collect();
        let mut inv = gens.clone();
        for _ in 0..8 {
            let next = [0, 1, 2, 3].map(|mu| &gens[mu] - &higher[mu].substitute(&inv));
            if next == inv {
                return Ok(BasisMap {
                    name: name.to_string(),
                    forward,
                    inverse: inv,
                    generator_names: default_generator_names(),
                    coordinate_names: default_coordinate_names(),
                });
            }
            inv = next;
        }
        Err(HopfError::InvalidMap("inverse expansion did not stabilise".into()))
    }

    pub fn identity() -> Self {
        BasisMap::new("identity", generators()).expect("identity is a valid map")
    }

    pub fn with_names(mut self, generators: [&str; 4], coordinates: [&str; 4]) -> Self {
        self.generator_names = generators.map(String::from);
        self.coordinate_names = coordinates.map(String::from);
        self
    }

    /// Checks a user-supplied inverse against the computed one.
    pub fn verify_inverse(&self, supplied: &[MomentumPoly; 4]) -> Result<(), HopfError> {
        for mu in 0..4 {
            if supplied[mu] != self.inverse[mu] {
                return Err(HopfError::InvalidMap(format!(
                    "supplied inverse component {mu} is {} but the expansion gives {}",
                    supplied[mu], self.inverse[mu]
                )));
            }
        }
        Ok(())
    }

    /// `forward ∘ inverse` and `inverse ∘ forward`, both of which should be
    /// the identity at the working truncation.
    pub fn compositions(&self) -> ([MomentumPoly; 4], [MomentumPoly; 4]) {
        let fi = self.forward.clone().map(|f| f.substitute(&self.inverse));
        let if_ = self.inverse.clone().map(|f| f.substitute(&self.forward));
        (fi, if_)
    }

    pub fn composes_to_identity(&self) -> bool {
        let (a, b) = self.compositions();
        let g = generators();
        a == g && b == g
    }
}

/// `p'_μ = p_μ + (1/κ) Σ m[μ][α][β] p_α p_β`.
pub fn quadratic_map(m: &[[[Rat; 4]; 4]; 4]) -> Result<BasisMap, HopfError> {
    let g = generators();
    let forward = [0, 1, 2, 3].map(|mu| {
        let mut f = g[mu].clone();
        for a in 0..4 {
            for b in 0..4 {
                let c = from_rat(m[mu][a][b].clone());
                if !is_zero(&c) {
                    f = &f + &(&g[a] * &g[b]).over_kappa().scale(&c);
                }
            }
        }
        f
    });
    BasisMap::new("quadratic", forward)
}

/// The walk's generators `(ω, k)` over the classical ones:
/// `ω = p₀`, `k₁ = p₁ + p₂p₃/κ`, `k₂ = p₂ − p₁p₃/κ`, `k₃ = p₃ + p₁p₂/κ`,
/// dual coordinates `(t, x1, x2, x3)`.
pub fn walk_basis_map() -> BasisMap {
    let [p0, p1, p2, p3] = generators();
    let forward =
        [p0, &p1 + &(&p2 * &p3).over_kappa(), &p2 - &(&p1 * &p3).over_kappa(), &p3 + &(&p1 * &p2).over_kappa()];
    BasisMap::new("walk", forward)
        .expect("walk map has J(0) = I")
        .with_names(["omega", "k1", "k2", "k3"], ["t", "x1", "x2", "x3"])
}

/// The inverse of [`walk_basis_map`] written out by hand:
/// `p₁ = k₁ − k₂k₃/κ`, `p₂ = k₂ + k₁k₃/κ`, `p₃ = k₃ − k₁k₂/κ`.
pub fn walk_basis_inverse() -> [MomentumPoly; 4] {
    let [w, k1, k2, k3] = generators();
    [w, &k1 - &(&k2 * &k3).over_kappa(), &k2 + &(&k1 * &k3).over_kappa(), &k3 - &(&k1 * &k2).over_kappa()]
}

/// Degree-2 Taylor polynomial of the walk vector `n(k)` in rescaled units
/// `q = k/√3`, with `sin q ≈ q` and `cos q ≈ 1 − q²/2`.
///
/// Slot 0 carries `ω` unchanged; slots 1..3 use generators 1..3 as `q`.
pub fn walk_n_taylor(c: Chirality) -> [MomentumPoly; 4] {
    let q = generators();
    let g = match c {
        Chirality::Plus => one(),
        Chirality::Minus => -one(),
    };
    let half = real(1, 2);
    let s = |a: usize| q[a].clone();
    let co = |a: usize| &MomentumPoly::one() - &(&q[a] * &q[a]).scale(&half);
    let nx = &(&(&s(1) * &co(2)) * &co(3)) + &(&(&co(1) * &s(2)) * &s(3)).scale(&g);
    let ny = &(&(&co(1) * &s(2)) * &co(3)) - &(&(&s(1) * &co(2)) * &s(3)).scale(&g);
    let nz = &(&(&co(1) * &co(2)) * &s(3)) + &(&(&s(1) * &s(2)) * &co(3)).scale(&g);
    [q[0].clone(), nx, ny, nz]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaylorComparison {
    pub component: usize,
    pub monomial: String,
    pub map_coeff: String,
    pub taylor_coeff: String,
}

/// Compares a map against a Taylor polynomial, reading each `1/κ` as one
/// power of the lattice scale. Returns every coefficient that differs.
pub fn compare_with_taylor(map: &BasisMap, taylor: &[MomentumPoly; 4]) -> Vec<TaylorComparison> {
    let mut out = Vec::new();
    for mu in 0..4 {
        let mut unit_scale = MomentumPoly::zero();
        for (m, c) in map.forward[mu].terms() {
            unit_scale.add_term(Mono { kappa: 0, exps: m.exps }, c.clone());
        }
        let diff = &unit_scale - &taylor[mu];
        for (m, _) in diff.terms() {
            out.push(TaylorComparison {
                component: mu,
                monomial: m.fmt_with(&map.generator_names),
                map_coeff: super::coeff::fmt_coeff(&unit_scale.coeff(m)),
                taylor_coeff: super::coeff::fmt_coeff(&taylor[mu].coeff(m)),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::coeff::{rat, Rat};

    #[test]
    fn identity_map() {
        let id = BasisMap::identity();
        assert_eq!(id.inverse, generators());
        assert!(id.composes_to_identity());
    }

    #[test]
    fn walk_map_inverse_matches_hand_expansion() {
        let w = walk_basis_map();
        w.verify_inverse(&walk_basis_inverse()).unwrap();
        assert!(w.composes_to_identity());
        assert_eq!(w.generator_names[0], "omega");
    }

    #[test]
    fn wrong_inverse_rejected() {
        let w = walk_basis_map();
        let mut bad = walk_basis_inverse();
        bad[1] = generators()[1].clone();
        assert!(matches!(w.verify_inverse(&bad), Err(HopfError::InvalidMap(_))));
    }

    #[test]
    fn rejects_bad_jacobian() {
        let mut f = generators();
        f[0] = f[0].scale(&real(2, 1));
        assert!(matches!(BasisMap::new("scaled", f), Err(HopfError::InvalidMap(_))));
        let mut f = generators();
        f[1] = &f[1] + &generators()[2].over_kappa();
        assert!(BasisMap::new("tilted", f).is_err());
        let mut f = generators();
        f[3] = &f[3] + &MomentumPoly::one();
        assert!(BasisMap::new("shifted", f).is_err());
    }

    #[test]
    fn quadratic_inverse_flips_sign() {
        let mut m: [[[Rat; 4]; 4]; 4] = Default::default();
        m[1][0][2] = rat(5, 2);
        let map = quadratic_map(&m).unwrap();
        let [p0, _, p2, _] = generators();
        let expected = &generators()[1] - &(&p0 * &p2).over_kappa().scale(&real(5, 2));
        assert_eq!(map.inverse[1], expected);
    }

    #[test]
    fn kappa_free_quadratic_terms_invert_too() {
        let mut f = generators();
        let [p0, p1, _, _] = generators();
        f[0] = &f[0] + &(&p1 * &p1);
        f[1] = &f[1] + &(&p0 * &p1).scale(&real(1, 3));
        let map = BasisMap::new("plain", f).unwrap();
        assert!(map.composes_to_identity());
    }

    #[test]
    fn walk_map_is_taylor_expansion_of_n() {
        let diffs = compare_with_taylor(&walk_basis_map(), &walk_n_taylor(Chirality::Plus));
        assert!(diffs.is_empty(), "{diffs:?}");
        assert!(!compare_with_taylor(&walk_basis_map(), &walk_n_taylor(Chirality::Minus)).is_empty());
    }
}
