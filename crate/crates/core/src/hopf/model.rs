//! Coproducts of the translation generators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::basis::BasisMap;
use super::momentum::{generators, MomentumPoly};
use super::tensor::TensorSeries;
use super::HopfError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Classical,
    Kappa,
}

impl FromStr for ModelKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "classical" => Ok(ModelKind::Classical),
            "kappa" => Ok(ModelKind::Kappa),
            other => Err(format!("unknown model {other:?} (expected classical or kappa)")),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Classical => "classical",
            ModelKind::Kappa => "kappa",
        })
    }
}

/// `Δ(p_μ)` for the four generators of a basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CoproductModel {
    pub kind: ModelKind,
    pub delta: [TensorSeries; 4],
}

impl CoproductModel {
    pub fn new(kind: ModelKind) -> Self {
        match kind {
            ModelKind::Classical => CoproductModel::classical(),
            ModelKind::Kappa => CoproductModel::kappa(),
        }
    }

    /// Primitive coproducts `1 ⊗ p + p ⊗ 1`.
    pub fn classical() -> Self {
        CoproductModel { kind: ModelKind::Classical, delta: generators().map(|p| TensorSeries::primitive(&p)) }
    }

    /// Bilinear κ-Poincaré coproducts in the classical basis:
    /// `Δp₀ = 1⊗p₀ + p₀⊗1 + (1/κ) Σ pᵢ⊗pᵢ`, `Δpᵢ = pᵢ⊗1 + (1/κ) pᵢ⊗p₀ + 1⊗pᵢ`.
    pub fn kappa() -> Self {
        let p = generators();
        let mut delta = p.clone().map(|g| TensorSeries::primitive(&g));
        for i in 1..4 {
            delta[0] = &delta[0] + &TensorSeries::outer(&p[i], &p[i].over_kappa());
            delta[i] = &delta[i] + &TensorSeries::outer(&p[i], &p[0].over_kappa());
        }
        CoproductModel { kind: ModelKind::Kappa, delta }
    }

    /// `Δ(f)`, extending the generator coproducts multiplicatively.
    pub fn coproduct(&self, f: &MomentumPoly) -> TensorSeries {
        TensorSeries::apply_hom(f, &self.delta)
    }

    /// `Δ(f)` keeping only total degree `≤ max`.
    pub fn coproduct_upto(&self, f: &MomentumPoly, max: u32) -> TensorSeries {
        TensorSeries::apply_hom_upto(f, &self.delta, max)
    }

    /// The same model written in the generators `p' = map.forward(p)`.
    ///
    /// `Δ(p'_μ) = forward_μ(Δp)`, with each leg rewritten through
    /// `p = inverse(p')` and the result cut back to total degree 2.
    pub fn mapped(&self, map: &BasisMap) -> CoproductModel {
        let delta =
            [0, 1, 2, 3].map(|mu| self.coproduct_upto(&map.forward[mu], 2).substitute_legs_upto(&map.inverse, 2));
        CoproductModel { kind: self.kind, delta }
    }

    /// `(ε ⊗ id)Δ = id = (id ⊗ ε)Δ` on generators.
    pub fn check_counit(&self) -> Result<(), HopfError> {
        for (mu, (d, p)) in self.delta.iter().zip(generators()).enumerate() {
            if d.counit_left() != p || d.counit_right() != p {
                return Err(HopfError::Inconsistent(format!("counit axiom fails for generator {mu}")));
            }
        }
        Ok(())
    }

    /// `Δ − flip(Δ)` per generator.
    pub fn cocommutator(&self) -> [TensorSeries; 4] {
        self.delta.clone().map(|d| &d - &d.flip())
    }
}
