//! Commutative polynomials in `p₀..p₃` over ℚ[i][1/κ], truncated at total
//! degree 2 and first order in `1/κ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::{fmt_coeff, is_zero, one, Coeff};

pub const MAX_DEGREE: u32 = 2;
pub const MAX_KAPPA: u8 = 1;

/// `κ^{−kappa} p₀^{e₀} p₁^{e₁} p₂^{e₂} p₃^{e₃}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono {
    pub kappa: u8,
    pub exps: [u8; 4],
}

impl Mono {
    pub const fn one() -> Self {
        Mono { kappa: 0, exps: [0; 4] }
    }

    pub fn generator(mu: usize) -> Self {
        let mut exps = [0; 4];
        exps[mu] = 1;
        Mono { kappa: 0, exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn times(&self, o: &Mono) -> Mono {
        let mut exps = [0; 4];
        for (k, e) in exps.iter_mut().enumerate() {
            *e = self.exps[k] + o.exps[k];
        }
        Mono { kappa: self.kappa + o.kappa, exps }
    }

    /// The single generator index if this is a linear monomial.
    pub fn linear_index(&self) -> Option<usize> {
        if self.degree() == 1 {
            self.exps.iter().position(|&e| e == 1)
        } else {
            None
        }
    }

    pub fn fmt_with(&self, names: &[String; 4]) -> String {
        let mut parts = Vec::new();
        for (mu, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[mu].clone()),
                _ => parts.push(format!("{}^{}", names[mu], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

pub fn default_names() -> [String; 4] {
    ["p0", "p1", "p2", "p3"].map(String::from)
}

/// A truncated momentum polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MomentumPoly {
    terms: BTreeMap<Mono, Coeff>,
}

impl MomentumPoly {
    pub fn zero() -> Self {
        MomentumPoly::default()
    }

    pub fn one() -> Self {
        MomentumPoly::term(one(), Mono::one())
    }

    pub fn constant(c: Coeff) -> Self {
        MomentumPoly::term(c, Mono::one())
    }

    /// `p_μ`.
    pub fn generator(mu: usize) -> Self {
        MomentumPoly::term(one(), Mono::generator(mu))
    }

    /// The formal symbol `1/κ`.
    pub fn inv_kappa() -> Self {
        MomentumPoly::term(one(), Mono { kappa: 1, exps: [0; 4] })
    }

    pub fn term(c: Coeff, m: Mono) -> Self {
        let mut p = MomentumPoly::zero();
        p.add_term(m, c);
        p
    }

    /// Adds `c·m`, discarding anything beyond the truncation.
    pub fn add_term(&mut self, m: Mono, c: Coeff) {
        if m.kappa > MAX_KAPPA || m.degree() > MAX_DEGREE || is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry = &*entry + c;
        if is_zero(entry) {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = MomentumPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v * c);
        }
        out
    }

    /// Multiplies by `1/κ`.
    pub fn over_kappa(&self) -> Self {
        self * &MomentumPoly::inv_kappa()
    }

    /// Terms of degree exactly `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mut out = MomentumPoly::zero();
        for (m, v) in &self.terms {
            if m.degree() == d {
                out.add_term(*m, v.clone());
            }
        }
        out
    }

    /// Drops every `1/κ` term (the `κ → ∞` limit).
    pub fn classical_limit(&self) -> Self {
        let mut out = MomentumPoly::zero();
        for (m, v) in &self.terms {
            if m.kappa == 0 {
                out.add_term(*m, v.clone());
            }
        }
        out
    }

    /// Substitutes `p_μ ↦ images[μ]`.
    pub fn substitute(&self, images: &[MomentumPoly; 4]) -> MomentumPoly {
        let mut out = MomentumPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = MomentumPoly::term(c.clone(), Mono { kappa: m.kappa, exps: [0; 4] });
            for (mu, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    acc = &acc * &images[mu];
                }
            }
            out = &out + &acc;
        }
        out
    }

    pub fn fmt_with(&self, names: &[String; 4]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let k = if m.kappa == 1 { "/kappa" } else { "" };
                format!("{}*{}{}", fmt_coeff(c), m.fmt_with(names), k)
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for MomentumPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&default_names()))
    }
}

impl Add for &MomentumPoly {
    type Output = MomentumPoly;
    fn add(self, o: &MomentumPoly) -> MomentumPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MomentumPoly {
    type Output = MomentumPoly;
    fn sub(self, o: &MomentumPoly) -> MomentumPoly {
        self + &(-o)
    }
}

impl Neg for &MomentumPoly {
    type Output = MomentumPoly;
    fn neg(self) -> MomentumPoly {
        self.scale(&-one())
    }
}

impl Mul for &MomentumPoly {
    type Output = MomentumPoly;
    fn mul(self, o: &MomentumPoly) -> MomentumPoly {
        let mut out = MomentumPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.times(m2);
                if m.kappa > MAX_KAPPA || m.degree() > MAX_DEGREE {
                    continue;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

/// `[p₀, p₁, p₂, p₃]` as polynomials.
pub fn generators() -> [MomentumPoly; 4] {
    [0, 1, 2, 3].map(MomentumPoly::generator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::coeff::{i, real};

    #[test]
    fn truncates_degree_and_order() {
        let [p0, p1, _, _] = generators();
        let a = &(&p0 * &p1) * &p1;
        assert!(a.is_zero());
        let k = MomentumPoly::inv_kappa();
        assert!((&k * &k).is_zero());
        assert_eq!((&p0 * &p1).degree(), 2);
    }

    #[test]
    fn substitution_composes() {
        let [p0, p1, p2, p3] = generators();
        // p1 ↦ p1 + p2 p3 / κ
        let f = &p1 * &p1;
        let images = [p0.clone(), &p1 + &(&p2 * &p3).over_kappa(), p2.clone(), p3.clone()];
        let g = f.substitute(&images);
        // (p1 + p2p3/κ)² truncates to p1²
        assert_eq!(g, &p1 * &p1);
        let h = p1.substitute(&images);
        assert_eq!(h.coeff(&Mono { kappa: 1, exps: [0, 0, 1, 1] }), real(1, 1));
    }

    #[test]
    fn display() {
        let [p0, _, _, p3] = generators();
        let f = &p0.scale(&i()) + &p3.over_kappa();
        assert_eq!(f.to_string(), "i*p0 + 1*p3/kappa");
    }

    #[test]
    fn retruncation_is_idempotent() {
        let [p0, p1, p2, _] = generators();
        let f = &(&p0 + &p1.over_kappa()) * &(&p2 + &MomentumPoly::one());
        let g = f.substitute(&generators());
        assert_eq!(f, g);
    }
}
