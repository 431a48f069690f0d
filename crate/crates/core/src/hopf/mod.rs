//! Exact truncated Hopf-algebra computations: translation coproducts, the
//! pairing with positions, spacetime and phase-space commutators, and the
//! numeric `κ → ∞` check.
//!
//! Everything symbolic lives at total degree ≤ 2 and first order in `1/κ`.
//! Spatial indices are 0-based internally (`p₁ ↔ 1`), so the cyclic
//! notation `x = 1, y = 2, z = 3` maps directly.

pub mod basis;
pub mod coeff;
pub mod duality;
pub mod export;
pub mod fuzz;
pub mod lie;
pub mod limit;
pub mod model;
pub mod momentum;
pub mod phase;
pub mod reference;
pub mod tensor;

pub use basis::{quadratic_map, walk_basis_map, BasisMap};
pub use duality::{CommutatorTable, Duality, PairingConstants};
pub use fuzz::{basis_independence_fuzz, FuzzReport};
pub use lie::{lie_checks, LieReport, LieStructure};
pub use limit::{kappa_classical_limit, KappaLimitReport};
pub use model::{CoproductModel, ModelKind};
pub use momentum::MomentumPoly;
pub use phase::{PhaseSpaceElement, PhaseSpaceRules};
pub use tensor::TensorSeries;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("invalid basis map: {0}")]
    InvalidMap(String),
    #[error("outside the truncation: {0}")]
    DegreeOverflow(String),
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
}
