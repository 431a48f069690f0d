//! Elements of `T ⊗ T`, truncated at first order in `1/κ`.
//!
//! Legs are stored as raw exponent vectors so products of degree-2 factors
//! keep their degree-3 and degree-4 parts; [`TENSOR_MAX_DEGREE`] bounds the
//! total degree of a term.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::{is_zero, one, Coeff};
use super::momentum::{MomentumPoly, Mono, MAX_KAPPA};

pub const TENSOR_MAX_DEGREE: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorKey {
    pub kappa: u8,
    pub left: [u8; 4],
    pub right: [u8; 4],
}

impl TensorKey {
    pub fn degree(&self) -> u32 {
        self.left.iter().chain(self.right.iter()).map(|&e| e as u32).sum()
    }

    pub fn left_mono(&self) -> Mono {
        Mono { kappa: 0, exps: self.left }
    }

    pub fn right_mono(&self) -> Mono {
        Mono { kappa: 0, exps: self.right }
    }
}

fn exps_degree(e: &[u8; 4]) -> u32 {
    e.iter().map(|&v| v as u32).sum()
}

fn add_exps(a: &[u8; 4], b: &[u8; 4]) -> [u8; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorSeries {
    terms: BTreeMap<TensorKey, Coeff>,
}

impl TensorSeries {
    pub fn zero() -> Self {
        TensorSeries::default()
    }

    /// `1 ⊗ 1`.
    pub fn unit() -> Self {
        let mut t = TensorSeries::zero();
        t.add_term(TensorKey { kappa: 0, left: [0; 4], right: [0; 4] }, one());
        t
    }

    /// `f ⊗ g`.
    pub fn outer(f: &MomentumPoly, g: &MomentumPoly) -> Self {
        let mut t = TensorSeries::zero();
        for (m1, c1) in f.terms() {
            for (m2, c2) in g.terms() {
                let key = TensorKey { kappa: m1.kappa + m2.kappa, left: m1.exps, right: m2.exps };
                t.add_term(key, c1 * c2);
            }
        }
        t
    }

    /// `1 ⊗ f + f ⊗ 1`.
    pub fn primitive(f: &MomentumPoly) -> Self {
        &TensorSeries::outer(&MomentumPoly::one(), f) + &TensorSeries::outer(f, &MomentumPoly::one())
    }

    pub fn add_term(&mut self, key: TensorKey, c: Coeff) {
        if key.kappa > MAX_KAPPA || key.degree() > TENSOR_MAX_DEGREE || is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry = &*entry + c;
        if is_zero(entry) {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &Coeff)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = TensorSeries::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// Drops terms of total degree above `d`.
    pub fn truncate_degree(&self, d: u32) -> Self {
        let mut out = TensorSeries::zero();
        for (k, v) in &self.terms {
            if k.degree() <= d {
                out.add_term(*k, v.clone());
            }
        }
        out
    }

    /// `(ε ⊗ id)`.
    pub fn counit_left(&self) -> MomentumPoly {
        let mut out = MomentumPoly::zero();
        for (k, v) in &self.terms {
            if k.left == [0; 4] && exps_degree(&k.right) <= 2 {
                out.add_term(Mono { kappa: k.kappa, exps: k.right }, v.clone());
            }
        }
        out
    }

    /// `(id ⊗ ε)`.
    pub fn counit_right(&self) -> MomentumPoly {
        let mut out = MomentumPoly::zero();
        for (k, v) in &self.terms {
            if k.right == [0; 4] && exps_degree(&k.left) <= 2 {
                out.add_term(Mono { kappa: k.kappa, exps: k.left }, v.clone());
            }
        }
        out
    }

    /// `a ⊗ b ↦ b ⊗ a`.
    pub fn flip(&self) -> Self {
        let mut out = TensorSeries::zero();
        for (k, v) in &self.terms {
            out.add_term(TensorKey { kappa: k.kappa, left: k.right, right: k.left }, v.clone());
        }
        out
    }

    /// Terms with a degree-1 monomial in each leg, as `(κ order, a, b, coeff)`
    /// for `p_a ⊗ p_b`.
    pub fn bilinear_terms(&self) -> Vec<(u8, usize, usize, Coeff)> {
        self.terms
            .iter()
            .filter_map(|(k, v)| {
                let a = k.left_mono().linear_index()?;
                let b = k.right_mono().linear_index()?;
                Some((k.kappa, a, b, v.clone()))
            })
            .collect()
    }

    /// Applies the substitution `p_μ ↦ images[μ]` in both legs.
    pub fn substitute_legs(&self, images: &[MomentumPoly; 4]) -> Self {
        self.substitute_legs_upto(images, TENSOR_MAX_DEGREE)
    }

    /// [`Self::substitute_legs`] keeping only total degree `≤ max`.
    pub fn substitute_legs_upto(&self, images: &[MomentumPoly; 4], max: u32) -> Self {
        let one_poly = MomentumPoly::one();
        let left: Vec<TensorSeries> = images.iter().map(|f| TensorSeries::outer(f, &one_poly)).collect();
        let right: Vec<TensorSeries> = images.iter().map(|f| TensorSeries::outer(&one_poly, f)).collect();
        let mut out = TensorSeries::zero();
        for (k, c) in &self.terms {
            let mut acc = TensorSeries::zero();
            acc.add_term(TensorKey { kappa: k.kappa, left: [0; 4], right: [0; 4] }, c.clone());
            for mu in 0..4 {
                for _ in 0..k.left[mu] {
                    acc = acc.mul_upto(&left[mu], max);
                }
                for _ in 0..k.right[mu] {
                    acc = acc.mul_upto(&right[mu], max);
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// The algebra homomorphism `f ↦ f(images)` from `T` into `T ⊗ T`.
    pub fn apply_hom(f: &MomentumPoly, images: &[TensorSeries; 4]) -> Self {
        TensorSeries::apply_hom_upto(f, images, TENSOR_MAX_DEGREE)
    }

    /// [`Self::apply_hom`] keeping only total degree `≤ max`.
    pub fn apply_hom_upto(f: &MomentumPoly, images: &[TensorSeries; 4], max: u32) -> Self {
        let mut out = TensorSeries::zero();
        for (m, c) in f.terms() {
            let mut acc = TensorSeries::zero();
            acc.add_term(TensorKey { kappa: m.kappa, left: [0; 4], right: [0; 4] }, c.clone());
            for (mu, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul_upto(&images[mu], max);
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Product dropping every term of total degree above `max`.
    pub fn mul_upto(&self, o: &TensorSeries, max: u32) -> TensorSeries {
        let mut out = TensorSeries::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let key = TensorKey {
                    kappa: k1.kappa + k2.kappa,
                    left: add_exps(&k1.left, &k2.left),
                    right: add_exps(&k1.right, &k2.right),
                };
                if key.kappa > MAX_KAPPA || key.degree() > max {
                    continue;
                }
                out.add_term(key, c1 * c2);
            }
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
            .map(|(k, c)| {
                let kap = if k.kappa == 1 { "/kappa" } else { "" };
                format!(
                    "{}*({} ⊗ {}){}",
                    super::coeff::fmt_coeff(c),
                    k.left_mono().fmt_with(names),
                    k.right_mono().fmt_with(names),
                    kap
                )
            })
            .collect();
        parts.join(" + ")
    }
}

impl Add for &TensorSeries {
    type Output = TensorSeries;
    fn add(self, o: &TensorSeries) -> TensorSeries {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Neg for &TensorSeries {
    type Output = TensorSeries;
    fn neg(self) -> TensorSeries {
        self.scale(&-one())
    }
}

impl Sub for &TensorSeries {
    type Output = TensorSeries;
    fn sub(self, o: &TensorSeries) -> TensorSeries {
        self + &(-o)
    }
}

impl Mul for &TensorSeries {
    type Output = TensorSeries;
    fn mul(self, o: &TensorSeries) -> TensorSeries {
        self.mul_upto(o, TENSOR_MAX_DEGREE)
    }
}
