//! Numeric κ-Poincaré coproducts and their `κ → ∞` degeneration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// `K − 1` with `K = (p₀ + √(p₀² − |p|² + κ²))/κ`, written so no
/// cancellation happens for `κ ≫ |p|`.
pub fn k_minus_one(p: [f64; 4], kappa: f64) -> f64 {
    let m = p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3];
    (p[0] + m / ((kappa * kappa + m).sqrt() + kappa)) / kappa
}

pub fn k_factor(p: [f64; 4], kappa: f64) -> f64 {
    1.0 + k_minus_one(p, kappa)
}

fn dot3(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Full κ-Poincaré coproducts in the classical basis, evaluated with the
/// left leg at `q` and the right leg at `r`:
///
/// `Δp₀ = κ sinh(ln K_q + ln K_r) + q² K_r/(2κ K_q) + q·r/(κ K_q) + r²/(2κ K_q K_r)`,
/// `Δpᵢ = qᵢ K_r + rᵢ`.
pub fn kappa_coproduct(q: [f64; 4], r: [f64; 4], kappa: f64) -> [f64; 4] {
    let (kq, kr) = (k_factor(q, kappa), k_factor(r, kappa));
    let u = k_minus_one(q, kappa).ln_1p() + k_minus_one(r, kappa).ln_1p();
    let p0 = kappa * u.sinh()
        + dot3(q, q) * kr / (2.0 * kappa * kq)
        + dot3(q, r) / (kappa * kq)
        + dot3(r, r) / (2.0 * kappa * kq * kr);
    [p0, q[1] * kr + r[1], q[2] * kr + r[2], q[3] * kr + r[3]]
}

pub fn primitive_coproduct(q: [f64; 4], r: [f64; 4]) -> [f64; 4] {
    [q[0] + r[0], q[1] + r[1], q[2] + r[2], q[3] + r[3]]
}

/// The bilinear truncation `q + r + (1/κ)(q·r, qᵢ r₀)`.
pub fn truncated_coproduct(q: [f64; 4], r: [f64; 4], kappa: f64) -> [f64; 4] {
    let s = primitive_coproduct(q, r);
    [s[0] + dot3(q, r) / kappa, s[1] + q[1] * r[0] / kappa, s[2] + q[2] * r[0] / kappa, s[3] + q[3] * r[0] / kappa]
}

fn max_abs_diff(a: [f64; 4], b: [f64; 4]) -> f64 {
    (0..4).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

fn max_abs(a: [f64; 4]) -> f64 {
    a.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioCheck {
    pub kappa_low: f64,
    pub kappa_high: f64,
    pub observed: f64,
    pub expected: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationCheck {
    pub kappa: f64,
    pub max_relative_error: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KappaLimitReport {
    pub k_at_origin: Vec<f64>,
    pub deviations: Vec<(f64, f64)>,
    pub ratios: Vec<RatioCheck>,
    pub truncation: Vec<TruncationCheck>,
}

impl KappaLimitReport {
    pub fn passed(&self) -> bool {
        self.k_at_origin.iter().all(|&k| k == 1.0)
            && self.ratios.iter().all(|r| r.passed)
            && self.truncation.iter().all(|t| t.passed)
    }
}

/// Reference sample with `p₀ = 0.3`, `|p| = 0.2` in both legs.
pub fn reference_sample() -> ([f64; 4], [f64; 4]) {
    let dir = [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0];
    let q = [0.3, 0.2 * dir[0], 0.2 * dir[1], 0.2 * dir[2]];
    (q, q)
}

/// Deviation of the full coproduct from the primitive one at `κ`.
pub fn deviation(q: [f64; 4], r: [f64; 4], kappa: f64) -> f64 {
    max_abs_diff(kappa_coproduct(q, r, kappa), primitive_coproduct(q, r))
}

/// Relative gap between the full and the bilinear coproduct, normalized by
/// the larger of `|Δ|` and the input scale.
pub fn truncation_error(q: [f64; 4], r: [f64; 4], kappa: f64) -> f64 {
    let full = kappa_coproduct(q, r, kappa);
    let scale = max_abs(full).max(max_abs(q)).max(max_abs(r));
    max_abs_diff(full, truncated_coproduct(q, r, kappa)) / scale
}

/// Ratio test between consecutive κ values (deviation should shrink like
/// `1/κ`, within 10%), plus the truncation bound `10/κ²` over `samples`
/// random momenta with components in `[−0.5, 0.5]`.
pub fn kappa_classical_limit(kappas: &[f64], samples: usize, seed: u64) -> KappaLimitReport {
    let (q, r) = reference_sample();
    let k_at_origin = kappas.iter().map(|&k| k_factor([0.0; 4], k)).collect();
    let deviations: Vec<(f64, f64)> = kappas.iter().map(|&k| (k, deviation(q, r, k))).collect();
    let ratios = deviations
        .windows(2)
        .map(|w| {
            let observed = w[1].1 / w[0].1;
            let expected = w[0].0 / w[1].0;
            RatioCheck {
                kappa_low: w[0].0,
                kappa_high: w[1].0,
                observed,
                expected,
                passed: (observed / expected - 1.0).abs() < 0.1,
            }
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<([f64; 4], [f64; 4])> = (0..samples)
        .map(|_| {
            let mut v = || [0; 4].map(|_| rng.gen_range(-0.5..0.5));
            (v(), v())
        })
        .collect();
    let truncation = kappas
        .iter()
        .map(|&k| {
            let worst = pts.iter().map(|(a, b)| truncation_error(*a, *b, k)).fold(0.0, f64::max);
            let bound = 10.0 / (k * k);
            TruncationCheck { kappa: k, max_relative_error: worst, bound, passed: worst < bound }
        })
        .collect();
    KappaLimitReport { k_at_origin, deviations, ratios, truncation }
}
