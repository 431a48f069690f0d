//! Randomized check that quadratic changes of generators with `J(0) = I`
//! leave the spacetime commutators alone.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::basis::{quadratic_map, BasisMap};
use super::coeff::{rat, Rat};
use super::duality::{CommutatorTable, Duality, PairingConstants};
use super::model::CoproductModel;
use super::HopfError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MapCoefficient {
    pub component: usize,
    pub alpha: usize,
    pub beta: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzTrial {
    pub trial: u64,
    pub seed: u64,
    pub coefficients: Vec<MapCoefficient>,
    pub passed: bool,
    /// Entries that differ from the identity-map table, as
    /// `[lhs, rhs] = computed (expected ...)`.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub model: String,
    pub trials: Vec<FuzzTrial>,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(|t| t.passed)
    }

    pub fn failures(&self) -> usize {
        self.trials.iter().filter(|t| !t.passed).count()
    }

    /// One JSON object per trial.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for t in &self.trials {
            serde_json::to_writer(&mut w, t)?;
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Random rational in `[−3, 3]` with denominator at most 6.
fn random_rational<R: Rng>(rng: &mut R) -> Rat {
    let den = rng.gen_range(1..=6i64);
    let num = rng.gen_range(-3 * den..=3 * den);
    rat(num, den)
}

/// `m[μ][α][β]` for `α ≤ β`, every coefficient drawn independently.
pub fn random_quadratic_coefficients(seed: u64, trial: u64) -> [[[Rat; 4]; 4]; 4] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut m: [[[Rat; 4]; 4]; 4] = Default::default();
    for comp in m.iter_mut() {
        for a in 0..4 {
            for b in a..4 {
                comp[a][b] = random_quadratic_entry(&mut rng);
            }
        }
    }
    m
}

fn random_quadratic_entry<R: Rng>(rng: &mut R) -> Rat {
    random_rational(rng)
}

fn differences(base: &CommutatorTable, other: &CommutatorTable) -> Vec<String> {
    base.entries
        .iter()
        .zip(&other.entries)
        .filter(|(a, b)| a.value != b.value)
        .map(|(a, b)| format!("[{}, {}] = {} (expected {})", b.lhs, b.rhs, b.value_text(), a.value_text()))
        .collect()
}

/// Runs `trials` random quadratic maps `p' = p + (1/κ) m pp` through the
/// spacetime commutator solver and compares each table with the one from
/// the identity map. Trial `t` draws from stream `t` of a ChaCha8 generator
/// seeded with `seed`.
pub fn basis_independence_fuzz(model: &CoproductModel, trials: u64, seed: u64) -> Result<FuzzReport, HopfError> {
    let base = Duality::new(model, &BasisMap::identity(), PairingConstants::default())?.spacetime_commutators()?;
    let mut out = Vec::new();
    for trial in 0..trials {
        let m = random_quadratic_coefficients(seed, trial);
        let coefficients = (0..4)
            .flat_map(|mu| (0..4).flat_map(move |a| (a..4).map(move |b| (mu, a, b))))
            .map(|(mu, a, b)| MapCoefficient { component: mu, alpha: a, beta: b, value: m[mu][a][b].to_string() })
            .collect();
        let result = quadratic_map(&m)
            .and_then(|map| Duality::new(model, &map, PairingConstants::default()))
            .and_then(|d| d.spacetime_commutators());
        let (passed, counterexample) = match result {
            Ok(table) => {
                let diffs = differences(&base, &table);
                (diffs.is_empty(), (!diffs.is_empty()).then(|| diffs.join("; ")))
            }
            Err(e) => (false, Some(e.to_string())),
        };
        out.push(FuzzTrial { trial, seed, coefficients, passed, counterexample });
    }
    Ok(FuzzReport { model: model.kind.to_string(), trials: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_trial_passes() {
        let r = basis_independence_fuzz(&CoproductModel::kappa(), 1, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.trials[0].coefficients.len(), 40);
    }

    #[test]
    fn trials_are_reproducible_and_distinct() {
        let a = random_quadratic_coefficients(7, 3);
        let b = random_quadratic_coefficients(7, 3);
        let c = random_quadratic_coefficients(7, 4);
        assert_eq!(a, b);
        assert_ne!(a, c);
        for comp in &a {
            for row in comp {
                for v in row {
                    assert!(*v >= rat(-3, 1) && *v <= rat(3, 1));
                }
            }
        }
    }

    #[test]
    fn jsonl_has_one_line_per_trial() {
        let r = basis_independence_fuzz(&CoproductModel::classical(), 3, 1).unwrap();
        let mut buf = Vec::new();
        r.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(first["passed"], true);
    }
}
