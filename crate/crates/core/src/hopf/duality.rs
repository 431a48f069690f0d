//! The pairing between translations and positions, and the commutator
//! tables it induces.

use serde::Serialize;

use super::basis::BasisMap;
use super::coeff::{fmt_coeff, i, is_zero, one, zero, Coeff};
use super::model::{CoproductModel, ModelKind};
use super::momentum::{generators, MomentumPoly, Mono};
use super::phase::{Letter, PhaseSpaceElement};
use super::HopfError;

/// The matrix `c` with `⟨p_μ, x_ν⟩ = c_μν`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingConstants {
    pub c: [[Coeff; 4]; 4],
}

impl Default for PairingConstants {
    /// `c = iη`, `η = diag(1, −1, −1, −1)`. This is the choice under which
    /// the primitive coproduct gives `[ω, t] = i` and `[kᵢ, xⱼ] = −iδᵢⱼ`.
    fn default() -> Self {
        let mut c: [[Coeff; 4]; 4] = Default::default();
        c[0][0] = i();
        for (k, row) in c.iter_mut().enumerate().skip(1) {
            row[k] = -i();
        }
        PairingConstants { c }
    }
}

impl PairingConstants {
    /// `⟨p_μ, x_ν⟩ = δ_μν`, the bare derivative normalization.
    pub fn kronecker() -> Self {
        let mut c: [[Coeff; 4]; 4] = Default::default();
        for (k, row) in c.iter_mut().enumerate() {
            row[k] = one();
        }
        PairingConstants { c }
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<[[Coeff; 4]; 4], HopfError> {
        let mut a = self.c.clone();
        let mut inv: [[Coeff; 4]; 4] = Default::default();
        for (k, row) in inv.iter_mut().enumerate() {
            row[k] = one();
        }
        for col in 0..4 {
            let pivot = (col..4)
                .find(|&r| !is_zero(&a[r][col]))
                .ok_or_else(|| HopfError::Inconsistent("pairing constants are singular".into()))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..4 {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..4 {
                if r != col && !is_zero(&a[r][col]) {
                    let f = a[r][col].clone();
                    for j in 0..4 {
                        let (ac, ic) = (a[col][j].clone(), inv[col][j].clone());
                        a[r][j] = &a[r][j] - &(&f * &ac);
                        inv[r][j] = &inv[r][j] - &(&f * &ic);
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Row-by-row text, e.g. `[[i, 0, 0, 0], ...]`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.c.iter().map(|row| row.iter().map(fmt_coeff).collect()).collect()
    }
}

/// One commutator `[lhs, rhs] = value`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorEntry {
    pub lhs: String,
    pub rhs: String,
    pub value: MomentumPoly,
    /// Names for the generators appearing in `value`.
    pub value_names: [String; 4],
}

impl CommutatorEntry {
    pub fn value_text(&self) -> String {
        self.value.fmt_with(&self.value_names)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorTable {
    pub model: ModelKind,
    pub basis_map: String,
    pub pairing: PairingConstants,
    pub entries: Vec<CommutatorEntry>,
}

impl CommutatorTable {
    pub fn get(&self, lhs: &str, rhs: &str) -> Option<&CommutatorEntry> {
        self.entries.iter().find(|e| e.lhs == lhs && e.rhs == rhs)
    }

    /// Sets `1/κ → 0` in every entry.
    pub fn classical_limit(&self) -> CommutatorTable {
        let mut t = self.clone();
        for e in &mut t.entries {
            e.value = e.value.classical_limit();
        }
        t
    }

    /// Entries as `(lhs, rhs, value)` strings, for report output.
    pub fn rows(&self) -> Vec<(String, String, String)> {
        self.entries.iter().map(|e| (e.lhs.clone(), e.rhs.clone(), e.value_text())).collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TextRow {
    pub lhs: String,
    pub rhs: String,
    pub value: String,
}

/// A model written in the generators of a basis map, paired with dual
/// coordinates.
#[derive(Clone, Debug)]
pub struct Duality {
    pub model: CoproductModel,
    pub map: BasisMap,
    pub constants: PairingConstants,
    c_inv: [[Coeff; 4]; 4],
}

impl Duality {
    pub fn new(model: &CoproductModel, map: &BasisMap, constants: PairingConstants) -> Result<Self, HopfError> {
        let c_inv = constants.inverse()?;
        let mapped = model.mapped(map);
        mapped.check_counit()?;
        Ok(Duality { model: mapped, map: map.clone(), constants, c_inv })
    }

    pub fn with_default_pairing(model: &CoproductModel, map: &BasisMap) -> Result<Self, HopfError> {
        Duality::new(model, map, PairingConstants::default())
    }

    /// `⟨f, x_{w₁} ⋯ x_{wₙ}⟩` for words of length ≤ 2. The result is a
    /// constant, possibly with a `1/κ` part.
    ///
    /// Length 1 uses `c` directly (degree-2 momenta pair to zero against a
    /// primitive `x`); length 2 goes through `⟨Δf, x ⊗ y⟩`.
    pub fn pair(&self, f: &MomentumPoly, word: &[usize]) -> Result<MomentumPoly, HopfError> {
        let mut out = MomentumPoly::zero();
        match word {
            [] => {
                for (m, c) in f.terms() {
                    if m.degree() == 0 {
                        out.add_term(*m, c.clone());
                    }
                }
            }
            [nu] => {
                for (m, c) in f.terms() {
                    if let Some(a) = m.linear_index() {
                        let k = Mono { kappa: m.kappa, exps: [0; 4] };
                        out.add_term(k, c * &self.constants.c[a][*nu]);
                    }
                }
            }
            [mu, nu] => {
                out = self.pair_bilinear(&self.model.coproduct_upto(f, 2).bilinear_terms(), *mu, *nu);
            }
            _ => return Err(HopfError::DegreeOverflow(format!("position monomial of degree {}", word.len()))),
        }
        Ok(out)
    }

    /// `p ▷ w = Σ ⟨p, w₍₂₎⟩ w₍₁₎` with the primitive position coproduct, so
    /// `w₍₁₎ ⊗ w₍₂₎` runs over order-preserving splittings of the word.
    pub fn coregular_action(&self, p: &MomentumPoly, word: &[usize]) -> Result<PhaseSpaceElement, HopfError> {
        if word.len() > 2 {
            return Err(HopfError::DegreeOverflow(format!("position monomial of degree {}", word.len())));
        }
        let n = word.len();
        let mut out = PhaseSpaceElement::zero();
        for mask in 0..(1u32 << n) {
            let first: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).map(|j| word[j]).collect();
            let second: Vec<usize> = (0..n).filter(|j| mask & (1 << j) == 0).map(|j| word[j]).collect();
            let scalar = self.pair(p, &second)?;
            let letters: Vec<Letter> = first.iter().map(|&mu| Letter::X(mu)).collect();
            for (m, c) in scalar.terms() {
                out.add_term(m.kappa, &letters, c.clone());
            }
        }
        Ok(out)
    }

    /// `⟨p_ρ, x_μ x_ν⟩` for all indices, as `B[ρ][μ][ν]`.
    /// `⟨Σ c a⊗b, x_μ ⊗ x_ν⟩` over the bilinear part of a coproduct.
    fn pair_bilinear(&self, terms: &[(u8, usize, usize, Coeff)], mu: usize, nu: usize) -> MomentumPoly {
        let mut out = MomentumPoly::zero();
        for (kappa, a, b, c) in terms {
            let v = &(c * &self.constants.c[*a][mu]) * &self.constants.c[*b][nu];
            out.add_term(Mono { kappa: *kappa, exps: [0; 4] }, v);
        }
        out
    }

    fn quadratic_pairings(&self) -> Vec<Vec<Vec<MomentumPoly>>> {
        (0..4)
            .map(|rho| {
                let terms = self.model.delta[rho].bilinear_terms();
                (0..4).map(|mu| (0..4).map(|nu| self.pair_bilinear(&terms, mu, nu)).collect()).collect()
            })
            .collect()
    }

    /// `[x_μ, x_ν] = Σ_σ C^σ_μν x_σ`, solved from
    /// `⟨p_ρ, [x_μ, x_ν]⟩ = Σ_σ c_ρσ C^σ_μν`.
    ///
    /// Fails with `Inconsistent` if the commutator would need a constant
    /// part or pairs nontrivially with a quadratic momentum.
    pub fn spacetime_commutators(&self) -> Result<CommutatorTable, HopfError> {
        let b = self.quadratic_pairings();
        let g = generators();
        let mut quadratic = Vec::new();
        for a in 0..4 {
            for bb in a..4 {
                quadratic.push((a, bb, self.model.coproduct_upto(&(&g[a] * &g[bb]), 2).bilinear_terms()));
            }
        }
        let mut entries = Vec::new();
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                for (a, bb, terms) in &quadratic {
                    let mut v = MomentumPoly::zero();
                    for (kappa, l, r, c) in terms {
                        let c = c * &(&(&self.constants.c[*l][mu] * &self.constants.c[*r][nu])
                            - &(&self.constants.c[*l][nu] * &self.constants.c[*r][mu]));
                        v.add_term(Mono { kappa: *kappa, exps: [0; 4] }, c);
                    }
                    if !v.is_zero() {
                        return Err(HopfError::Inconsistent(format!("[x{mu}, x{nu}] pairs to {v} against p{a}p{bb}")));
                    }
                }
                let mut value = MomentumPoly::zero();
                for sigma in 0..4 {
                    let mut coef = MomentumPoly::zero();
                    for rho in 0..4 {
                        let d = &b[rho][mu][nu] - &b[rho][nu][mu];
                        coef = &coef + &d.scale(&self.c_inv[sigma][rho]);
                    }
                    value = &value + &(&coef * &g[sigma]);
                }
                entries.push(CommutatorEntry {
                    lhs: self.map.coordinate_names[mu].clone(),
                    rhs: self.map.coordinate_names[nu].clone(),
                    value,
                    value_names: self.map.coordinate_names.clone(),
                });
            }
        }
        Ok(self.table(entries))
    }

    /// `[p_μ, x_ν]` in the cross product, computed as
    /// `(1 ⊗ p)(x ⊗ 1) − x ⊗ p = Σ (p₍₁₎ ▷ x) ⊗ p₍₂₎ − x ⊗ p`.
    pub fn phase_space_commutators(&self) -> Result<CommutatorTable, HopfError> {
        let mut entries = Vec::new();
        for mu in 0..4 {
            for nu in 0..4 {
                let value = self.phase_commutator(mu, nu)?;
                entries.push(CommutatorEntry {
                    lhs: self.map.generator_names[mu].clone(),
                    rhs: self.map.coordinate_names[nu].clone(),
                    value,
                    value_names: self.map.generator_names.clone(),
                });
            }
        }
        Ok(self.table(entries))
    }

    fn phase_commutator(&self, mu: usize, nu: usize) -> Result<MomentumPoly, HopfError> {
        let mut acc = PhaseSpaceElement::zero();
        for (key, c) in self.model.delta[mu].terms() {
            let left = MomentumPoly::term(one(), key.left_mono());
            let acted = self.coregular_action(&left, &[nu])?;
            let right = PhaseSpaceElement::p_monomial(key.kappa, &key.right);
            acc = &acc + &(&acted * &right).scale(c);
        }
        let xp = PhaseSpaceElement::word(0, &[Letter::X(nu), Letter::P(mu)]);
        let diff = &acc - &xp;
        diff.as_momentum()
            .ok_or_else(|| HopfError::Inconsistent(format!("[p{mu}, x{nu}] keeps a position part: {diff}")))
    }

    fn table(&self, entries: Vec<CommutatorEntry>) -> CommutatorTable {
        CommutatorTable {
            model: self.model.kind,
            basis_map: self.map.name.clone(),
            pairing: self.constants.clone(),
            entries,
        }
    }
}

/// True when every entry of `t` is zero.
pub fn all_zero(t: &CommutatorTable) -> bool {
    t.entries.iter().all(|e| e.value.is_zero())
}

/// Shorthand for a degree-0 polynomial.
pub fn scalar(c: Coeff) -> MomentumPoly {
    if is_zero(&c) {
        MomentumPoly::zero()
    } else {
        MomentumPoly::constant(c)
    }
}

pub fn zero_poly() -> MomentumPoly {
    scalar(zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::basis::walk_basis_map;
    use crate::hopf::coeff::{imag, real};

    fn classical() -> Duality {
        Duality::with_default_pairing(&CoproductModel::classical(), &BasisMap::identity()).unwrap()
    }

    /// Brute-force oracle for the primitive coproduct: `f` becomes the
    /// differential operator `f(c·∂)` applied to `x_μ x_ν` at the origin.
    fn differentiate(f: &MomentumPoly, word: &[usize], c: &PairingConstants) -> Coeff {
        let mut total = zero();
        for (m, coef) in f.terms() {
            let mut derivs = Vec::new();
            for (a, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    derivs.push(a);
                }
            }
            if derivs.len() != word.len() {
                continue;
            }
            // sum over ways of matching each derivative to one factor
            let value = match word.len() {
                0 => one(),
                1 => c.c[derivs[0]][word[0]].clone(),
                _ => {
                    &(&c.c[derivs[0]][word[0]] * &c.c[derivs[1]][word[1]])
                        + &(&c.c[derivs[0]][word[1]] * &c.c[derivs[1]][word[0]])
                }
            };
            total = &total + &(coef * &value);
        }
        total
    }

    #[test]
    fn pairing_examples() {
        let d = classical();
        let g = generators();
        assert_eq!(d.pair(&g[0], &[0]).unwrap(), scalar(i()));
        assert_eq!(d.pair(&g[2], &[2]).unwrap(), scalar(-i()));
        assert_eq!(d.pair(&g[1], &[2]).unwrap(), zero_poly());
        assert_eq!(d.pair(&MomentumPoly::one(), &[1]).unwrap(), zero_poly());
        assert_eq!(d.pair(&MomentumPoly::one(), &[]).unwrap(), scalar(one()));
        assert!(matches!(d.pair(&g[0], &[0, 1, 2]), Err(HopfError::DegreeOverflow(_))));
    }

    #[test]
    fn pairing_matches_differentiation_oracle() {
        let d = classical();
        let g = generators();
        let mut polys = vec![MomentumPoly::one()];
        for a in 0..4 {
            polys.push(g[a].clone());
            for b in a..4 {
                polys.push(&g[a] * &g[b]);
            }
        }
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        for mu in 0..4 {
            words.push(vec![mu]);
            for nu in 0..4 {
                words.push(vec![mu, nu]);
            }
        }
        for f in &polys {
            for w in &words {
                let got = d.pair(f, w).unwrap();
                assert_eq!(got, scalar(differentiate(f, w, &d.constants)), "{f} on {w:?}");
            }
        }
        // ⟨p₁p₂, x₁x₂⟩ = (−i)(−i)
        assert_eq!(d.pair(&(&g[1] * &g[2]), &[1, 2]).unwrap(), scalar(real(-1, 1)));
    }

    #[test]
    fn duality_axioms_in_kappa_walk_basis() {
        let d = Duality::with_default_pairing(&CoproductModel::kappa(), &walk_basis_map()).unwrap();
        let g = generators();
        for a in 0..4 {
            for b in 0..4 {
                for nu in 0..4 {
                    // ⟨pq, x⟩ = ⟨p ⊗ q, Δx⟩ = ⟨p, x⟩ε(q) + ε(p)⟨q, x⟩ = 0
                    assert!(d.pair(&(&g[a] * &g[b]), &[nu]).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn coregular_action_examples() {
        let d = classical();
        let g = generators();
        assert!(d.coregular_action(&g[1], &[]).unwrap().is_zero());
        let one_elem = PhaseSpaceElement::word(0, &[]);
        assert_eq!(d.coregular_action(&g[1], &[1]).unwrap(), one_elem.scale(&-i()));
        // Leibniz: p₁ ▷ x₁x₂ = −i x₂
        let got = d.coregular_action(&g[1], &[1, 2]).unwrap();
        assert_eq!(got, PhaseSpaceElement::word(0, &[Letter::X(2)]).scale(&-i()));
        let unit = d.coregular_action(&MomentumPoly::one(), &[1, 2]).unwrap();
        assert_eq!(unit, PhaseSpaceElement::word(0, &[Letter::X(1), Letter::X(2)]));
    }

    #[test]
    fn classical_identity_tables() {
        let d = classical();
        assert!(all_zero(&d.spacetime_commutators().unwrap()));
        let t = d.phase_space_commutators().unwrap();
        assert_eq!(t.get("p0", "x0").unwrap().value, scalar(i()));
        assert_eq!(t.get("p1", "x1").unwrap().value, scalar(-i()));
        assert!(t.get("p1", "x2").unwrap().value.is_zero());
    }

    #[test]
    fn kappa_minkowski_identity_map() {
        let d = Duality::with_default_pairing(&CoproductModel::kappa(), &BasisMap::identity()).unwrap();
        let t = d.spacetime_commutators().unwrap();
        let g = generators();
        for j in 1..4 {
            assert_eq!(t.get("x0", &format!("x{j}")).unwrap().value, g[j].over_kappa().scale(&imag(-1, 1)));
        }
        assert!(t.get("x1", "x2").unwrap().value.is_zero());
    }

    #[test]
    fn bare_pairing_is_available() {
        let d =
            Duality::new(&CoproductModel::classical(), &BasisMap::identity(), PairingConstants::kronecker()).unwrap();
        let t = d.phase_space_commutators().unwrap();
        assert_eq!(t.get("p2", "x2").unwrap().value, scalar(one()));
    }

    #[test]
    fn singular_pairing_rejected() {
        let c = PairingConstants { c: Default::default() };
        assert!(Duality::new(&CoproductModel::classical(), &BasisMap::identity(), c).is_err());
    }
}
