//! The cross-product phase space: words in positions and momenta, reduced
//! to the normal order "all x left of all p, each block sorted".

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::coeff::{fmt_coeff, is_zero, one, Coeff};
use super::duality::Duality;
use super::momentum::{MomentumPoly, Mono, MAX_KAPPA};
use super::HopfError;

/// Positions sort before momenta, then by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X(usize),
    P(usize),
}

type Word = Vec<Letter>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PhaseSpaceElement {
    terms: BTreeMap<(u8, Word), Coeff>,
}

impl PhaseSpaceElement {
    pub fn zero() -> Self {
        PhaseSpaceElement::default()
    }

    pub fn word(kappa: u8, letters: &[Letter]) -> Self {
        let mut e = PhaseSpaceElement::zero();
        e.add_term(kappa, letters, one());
        e
    }

    /// `p^exps`, written in sorted order.
    pub fn p_monomial(kappa: u8, exps: &[u8; 4]) -> Self {
        PhaseSpaceElement::word(kappa, &expand(exps, Letter::P))
    }

    pub fn from_momentum(f: &MomentumPoly) -> Self {
        let mut e = PhaseSpaceElement::zero();
        for (m, c) in f.terms() {
            e.add_term(m.kappa, &expand(&m.exps, Letter::P), c.clone());
        }
        e
    }

    pub fn add_term(&mut self, kappa: u8, letters: &[Letter], c: Coeff) {
        if kappa > MAX_KAPPA || is_zero(&c) {
            return;
        }
        let key = (kappa, letters.to_vec());
        let entry = self.terms.entry(key.clone()).or_default();
        *entry = &*entry + c;
        if is_zero(entry) {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u8, Word), &Coeff)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = PhaseSpaceElement::zero();
        for ((k, w), v) in &self.terms {
            out.add_term(*k, w, v * c);
        }
        out
    }

    pub fn truncate_degree(&self, d: usize) -> Self {
        let mut out = PhaseSpaceElement::zero();
        for ((k, w), v) in &self.terms {
            if w.len() <= d {
                out.add_term(*k, w, v.clone());
            }
        }
        out
    }

    /// The element as a momentum polynomial, if it has no position letters
    /// and fits the momentum truncation.
    pub fn as_momentum(&self) -> Option<MomentumPoly> {
        let mut out = MomentumPoly::zero();
        for ((k, w), v) in &self.terms {
            let mut exps = [0u8; 4];
            for l in w {
                match l {
                    Letter::P(a) => exps[*a] += 1,
                    Letter::X(_) => return None,
                }
            }
            let m = Mono { kappa: *k, exps };
            if m.degree() > super::momentum::MAX_DEGREE {
                return None;
            }
            out.add_term(m, v.clone());
        }
        Some(out)
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|(_, w)| w.windows(2).all(|p| p[0] <= p[1]))
    }

    pub fn fmt_with(&self, x_names: &[String; 4], p_names: &[String; 4]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((k, w), c)| {
                let letters: Vec<&str> = w
                    .iter()
                    .map(|l| match l {
                        Letter::X(a) => x_names[*a].as_str(),
                        Letter::P(a) => p_names[*a].as_str(),
                    })
                    .collect();
                let body = if letters.is_empty() { "1".to_string() } else { letters.join("*") };
                let kap = if *k == 1 { "/kappa" } else { "" };
                format!("{}*{}{}", fmt_coeff(c), body, kap)
            })
            .collect();
        parts.join(" + ")
    }
}

fn expand(exps: &[u8; 4], f: fn(usize) -> Letter) -> Word {
    let mut w = Vec::new();
    for (a, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            w.push(f(a));
        }
    }
    w
}

impl fmt::Display for PhaseSpaceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = ["x0", "x1", "x2", "x3"].map(String::from);
        let p = ["p0", "p1", "p2", "p3"].map(String::from);
        f.write_str(&self.fmt_with(&x, &p))
    }
}

impl Add for &PhaseSpaceElement {
    type Output = PhaseSpaceElement;
    fn add(self, o: &PhaseSpaceElement) -> PhaseSpaceElement {
        let mut out = self.clone();
        for ((k, w), c) in &o.terms {
            out.add_term(*k, w, c.clone());
        }
        out
    }
}

impl Sub for &PhaseSpaceElement {
    type Output = PhaseSpaceElement;
    fn sub(self, o: &PhaseSpaceElement) -> PhaseSpaceElement {
        self + &o.scale(&-one())
    }
}

/// Word concatenation, no reordering.
impl Mul for &PhaseSpaceElement {
    type Output = PhaseSpaceElement;
    fn mul(self, o: &PhaseSpaceElement) -> PhaseSpaceElement {
        let mut out = PhaseSpaceElement::zero();
        for ((k1, w1), c1) in &self.terms {
            for ((k2, w2), c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(k1 + k2, &w, c1 * c2);
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Commutation rules of one basis: `[x_μ, x_ν]` (linear in x) and
/// `[p_μ, x_ν]` (polynomial in p).
#[derive(Clone, Debug)]
pub struct PhaseSpaceRules {
    xx: [[PhaseSpaceElement; 4]; 4],
    px: [[PhaseSpaceElement; 4]; 4],
}

impl PhaseSpaceRules {
    pub fn from_duality(d: &Duality) -> Result<Self, HopfError> {
        let st = d.spacetime_commutators()?;
        let ps = d.phase_space_commutators()?;
        let mut xx: [[PhaseSpaceElement; 4]; 4] = Default::default();
        let mut px: [[PhaseSpaceElement; 4]; 4] = Default::default();
        let cn = &d.map.coordinate_names;
        let gn = &d.map.generator_names;
        for mu in 0..4 {
            for nu in 0..4 {
                if mu < nu {
                    let v = &st.get(&cn[mu], &cn[nu]).expect("entry present").value;
                    let mut e = PhaseSpaceElement::zero();
                    for (m, c) in v.terms() {
                        e.add_term(m.kappa, &expand(&m.exps, Letter::X), c.clone());
                    }
                    xx[nu][mu] = e.scale(&-one());
                    xx[mu][nu] = e;
                }
                let v = &ps.get(&gn[mu], &cn[nu]).expect("entry present").value;
                px[mu][nu] = PhaseSpaceElement::from_momentum(v);
            }
        }
        Ok(PhaseSpaceRules { xx, px })
    }

    /// `[u, v]` for an out-of-order pair `u > v`.
    fn commutator(&self, u: Letter, v: Letter) -> PhaseSpaceElement {
        match (u, v) {
            (Letter::X(a), Letter::X(b)) => self.xx[a][b].clone(),
            (Letter::P(a), Letter::X(b)) => self.px[a][b].clone(),
            _ => PhaseSpaceElement::zero(),
        }
    }

    /// Reduces to normal order by repeatedly applying `uv → vu + [u, v]`
    /// at the leftmost or rightmost descent.
    pub fn normalize(&self, e: &PhaseSpaceElement, strategy: Strategy) -> PhaseSpaceElement {
        let mut work: Vec<(u8, Word, Coeff)> = e.terms.iter().map(|((k, w), c)| (*k, w.clone(), c.clone())).collect();
        let mut done = PhaseSpaceElement::zero();
        while let Some((k, w, c)) = work.pop() {
            let mut descents = (0..w.len().saturating_sub(1)).filter(|&j| w[j] > w[j + 1]);
            let pos = match strategy {
                Strategy::Leftmost => descents.next(),
                Strategy::Rightmost => descents.next_back(),
            };
            let Some(j) = pos else {
                done.add_term(k, &w, c);
                continue;
            };
            let mut swapped = w.clone();
            swapped.swap(j, j + 1);
            work.push((k, swapped, c.clone()));
            for ((k2, mid), c2) in self.commutator(w[j], w[j + 1]).terms() {
                if k + k2 > MAX_KAPPA {
                    continue;
                }
                let mut nw = w[..j].to_vec();
                nw.extend_from_slice(mid);
                nw.extend_from_slice(&w[j + 2..]);
                work.push((k + k2, nw, &c * c2));
            }
        }
        done
    }

    /// Product in the cross-product algebra.
    pub fn multiply(&self, a: &PhaseSpaceElement, b: &PhaseSpaceElement) -> PhaseSpaceElement {
        self.normalize(&(a * b), Strategy::Leftmost)
    }
}

/// `(x ⊗ p)(x' ⊗ p') = x (p₍₁₎ ▷ x') ⊗ p₍₂₎ p'`, evaluated with the model's
/// coproduct and the coregular action, then normal-ordered.
pub fn cross_product(
    d: &Duality,
    rules: &PhaseSpaceRules,
    x: &[usize],
    p: &[u8; 4],
    x2: &[usize],
    p2: &[u8; 4],
) -> Result<PhaseSpaceElement, HopfError> {
    let xs: Word = x.iter().map(|&a| Letter::X(a)).collect();
    let left_x = PhaseSpaceElement::word(0, &xs);
    let tail = PhaseSpaceElement::p_monomial(0, p2);
    let delta = d.model.coproduct(&MomentumPoly::term(one(), Mono { kappa: 0, exps: *p }));
    let mut out = PhaseSpaceElement::zero();
    for (key, c) in delta.terms() {
        let acted = d.coregular_action(&MomentumPoly::term(one(), key.left_mono()), x2)?;
        let right = PhaseSpaceElement::p_monomial(key.kappa, &key.right);
        out = &out + &(&(&(&left_x * &acted) * &right) * &tail).scale(c);
    }
    Ok(rules.normalize(&out, Strategy::Leftmost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::basis::{walk_basis_map, BasisMap};
    use crate::hopf::model::CoproductModel;

    fn all_letters() -> Vec<Letter> {
        (0..4).map(Letter::X).chain((0..4).map(Letter::P)).collect()
    }

    fn setups() -> Vec<(Duality, PhaseSpaceRules)> {
        let mut out = Vec::new();
        for model in [CoproductModel::classical(), CoproductModel::kappa()] {
            for map in [BasisMap::identity(), walk_basis_map()] {
                let d = Duality::with_default_pairing(&model, &map).unwrap();
                let r = PhaseSpaceRules::from_duality(&d).unwrap();
                out.push((d, r));
            }
        }
        out
    }

    #[test]
    fn reordering_is_confluent() {
        let letters = all_letters();
        let mut words: Vec<Word> = vec![vec![]];
        for len in 1..=3 {
            let prev: Vec<Word> = words.iter().filter(|w| w.len() == len - 1).cloned().collect();
            for w in prev {
                for &l in &letters {
                    let mut n = w.clone();
                    n.push(l);
                    words.push(n);
                }
            }
        }
        assert_eq!(words.len(), 1 + 8 + 64 + 512);
        for (d, r) in setups() {
            for w in &words {
                let e = PhaseSpaceElement::word(0, w);
                let a = r.normalize(&e, Strategy::Leftmost);
                let b = r.normalize(&e, Strategy::Rightmost);
                assert!(a.is_normal());
                assert_eq!(a, b, "{:?}/{}: {w:?}", d.model.kind, d.map.name);
            }
        }
    }

    #[test]
    fn px_reorders_to_xp_plus_commutator() {
        for (d, r) in setups() {
            let table = d.phase_space_commutators().unwrap();
            for mu in 0..4 {
                for nu in 0..4 {
                    let e = PhaseSpaceElement::word(0, &[Letter::P(mu), Letter::X(nu)]);
                    let got = r.multiply(&e, &PhaseSpaceElement::word(0, &[]));
                    let v = &table.entries[mu * 4 + nu].value;
                    let expected = &PhaseSpaceElement::word(0, &[Letter::X(nu), Letter::P(mu)])
                        + &PhaseSpaceElement::from_momentum(v);
                    assert_eq!(got, expected);
                }
            }
        }
    }

    #[test]
    fn cross_product_formula_matches_rewriting() {
        let monos: Vec<[u8; 4]> = {
            let mut v = vec![[0; 4]];
            for a in 0..4 {
                let mut e = [0; 4];
                e[a] = 1;
                v.push(e);
                for b in a..4 {
                    let mut f = e;
                    f[b] += 1;
                    v.push(f);
                }
            }
            v
        };
        for (d, r) in setups() {
            for p in &monos {
                for x2 in [vec![], vec![0], vec![2], vec![0, 3], vec![2, 1]] {
                    let x = [1usize];
                    let via_formula = cross_product(&d, &r, &x, p, &x2, &[1, 0, 0, 0]).unwrap();
                    let mut letters: Word = x.iter().map(|&a| Letter::X(a)).collect();
                    letters.extend(expand(p, Letter::P));
                    letters.extend(x2.iter().map(|&a| Letter::X(a)));
                    letters.push(Letter::P(0));
                    let via_rules = r.normalize(&PhaseSpaceElement::word(0, &letters), Strategy::Rightmost);
                    assert_eq!(via_formula, via_rules, "{p:?} {x2:?}");
                }
            }
        }
    }

    #[test]
    fn truncation_and_display() {
        let e = PhaseSpaceElement::word(1, &[Letter::X(1), Letter::P(0), Letter::P(2)]);
        assert!(e.truncate_degree(2).is_zero());
        assert_eq!(e.to_string(), "1*x1*p0*p2/kappa");
        assert!(e.as_momentum().is_none());
        assert!((&e * &e).is_zero());
    }
}
