//! Weyl quantum walk, its deformed Lorentz symmetry, and a truncated
//! Hopf-algebra engine for the associated phase-space commutators.

#![allow(clippy::needless_range_loop)]

pub mod hopf;
pub mod lorentz;
pub mod spinor;
pub mod walk;

pub use lorentz::{FourVector, LorentzTransform, OnShellPoint};
pub use spinor::SpinorMatrix;
pub use walk::{Chirality, LatticeState, WaveVector};
