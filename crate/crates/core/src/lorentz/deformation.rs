//! The deformation map `D(ω, k) = g · (sin ω, n(k))` onto the light cone and
//! its numerical inverse.
//!
//! Each region `i` is handled by reduction to the neighbourhood of the
//! origin: with `δ = k − k_i` the walk satisfies `A^c(k_i + δ) = s_i A^{c_i}(δ)`
//! for a sign `s_i = λ^c(k_i)` and a local chirality `c_i` (flipped at the
//! two body-diagonal corners). The point stores the local frequency
//! `ω ∈ (−π/2, π/2)`; the walk eigenphase is `ω` or `ω + π`.

use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{FourVector, LorentzError, LorentzTransform};
use crate::walk::{lambda_scalar, n_jacobian, n_vector, special_point, Chirality, WaveVector, SQRT3};

/// Tolerance for the on-shell test `|sin²ω − |n|²|`.
const SHELL_TOL: f64 = 1e-12;
/// Relative tolerance for accepting a light-cone input.
const CONE_TOL: f64 = 1e-9;

/// `g` tabulated as a function of `s = sin²ω` (equivalently `|n|²` on shell),
/// linearly interpolated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TabulatedG {
    pub s: Vec<f64>,
    pub g: Vec<f64>,
}

impl TabulatedG {
    /// Checks `g(0) = 1`, increasing nodes, and that `g(s)·√s` is strictly
    /// increasing so the energy equation has a unique root.
    pub fn validate(&self) -> Result<(), LorentzError> {
        let bad = |m: &str| Err(LorentzError::InvalidG(m.to_string()));
        if self.s.len() != self.g.len() || self.s.len() < 2 {
            return bad("s and g must have equal length ≥ 2");
        }
        if self.s[0] != 0.0 || (self.g[0] - 1.0).abs() > 1e-15 {
            return bad("table must start at s = 0 with g = 1");
        }
        if self.s.windows(2).any(|w| w[1] <= w[0]) || *self.s.last().unwrap() > 1.0 {
            return bad("s nodes must increase within [0, 1]");
        }
        if self.g.iter().any(|&v| v.is_nan() || v <= 0.0 || v.is_infinite()) {
            return bad("g must be positive and finite");
        }
        let h: Vec<f64> = self.s.iter().zip(&self.g).map(|(s, g)| g * s.sqrt()).collect();
        if h.windows(2).any(|w| w[1] <= w[0]) {
            return bad("g(s)·√s must be strictly increasing");
        }
        Ok(())
    }

    fn eval(&self, s: f64) -> f64 {
        let last = self.s.len() - 1;
        if s >= self.s[last] {
            return self.g[last];
        }
        let j = self.s.partition_point(|&x| x <= s).max(1) - 1;
        let t = (s - self.s[j]) / (self.s[j + 1] - self.s[j]);
        self.g[j] + t * (self.g[j + 1] - self.g[j])
    }

    /// Solves `g(s)√s = h` by bisection.
    fn solve(&self, h: f64) -> Result<f64, LorentzError> {
        let s_max = *self.s.last().unwrap();
        if h > self.eval(s_max) * s_max.sqrt() {
            return Err(LorentzError::OutsideImage(h));
        }
        let (mut lo, mut hi) = (0.0, s_max);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.eval(mid) * mid.sqrt() < h {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// The admissible rescaling `g`. Every choice is a function of `|n|²` with
/// `g = 1` at `n = 0`, so `g(k_i) = 1` and `∇g(k_i) = 0` hold automatically.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum GChoice {
    /// `g ≡ 1`; the image only covers `|p₀| ≤ 1`.
    UnitG,
    /// `g = 1/|cos ω|`, so `D = (tan ω, n / cos ω)`.
    SecantG,
    Custom(TabulatedG),
}

impl GChoice {
    /// `g` at `s = sin²ω`.
    pub fn at(&self, s: f64) -> f64 {
        match self {
            GChoice::UnitG => 1.0,
            GChoice::SecantG => 1.0 / (1.0 - s).sqrt(),
            GChoice::Custom(t) => t.eval(s),
        }
    }

    /// Local frequency `ω ∈ (−π/2, π/2)` and `g` reproducing energy `p₀`.
    fn invert_energy(&self, p0: f64) -> Result<(f64, f64), LorentzError> {
        match self {
            GChoice::UnitG => {
                if p0.abs() > 1.0 {
                    return Err(LorentzError::OutsideImage(p0));
                }
                Ok((p0.asin(), 1.0))
            }
            GChoice::SecantG => {
                let w = p0.atan();
                Ok((w, (1.0 + p0 * p0).sqrt()))
            }
            GChoice::Custom(t) => {
                let s = t.solve(p0.abs())?;
                let w = s.sqrt().asin().copysign(p0);
                Ok((w, t.eval(s)))
            }
        }
    }
}

/// Settings for `D` and its inverse.
#[derive(Clone, Debug)]
pub struct DeformationConfig {
    pub g_choice: GChoice,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Radius of the ball `|k − k_i| ≤ r` on which `D⁻¹` is advertised.
    pub safe_radius: f64,
    self_check: OnceLock<f64>,
}

impl Default for DeformationConfig {
    fn default() -> Self {
        DeformationConfig::new(GChoice::SecantG)
    }
}

impl PartialEq for DeformationConfig {
    fn eq(&self, o: &Self) -> bool {
        self.g_choice == o.g_choice
            && self.newton_tol == o.newton_tol
            && self.newton_max_iter == o.newton_max_iter
            && self.safe_radius == o.safe_radius
    }
}

/// On-disk form of [`DeformationConfig`].
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationConfigFile {
    pub g_choice: Option<String>,
    pub g_table_s: Option<Vec<f64>>,
    pub g_table_g: Option<Vec<f64>>,
    pub newton_tol: Option<f64>,
    pub newton_max_iter: Option<usize>,
    pub safe_radius: Option<f64>,
}

impl DeformationConfig {
    pub fn new(g_choice: GChoice) -> Self {
        DeformationConfig {
            g_choice,
            newton_tol: 1e-12,
            newton_max_iter: 64,
            safe_radius: SQRT3 * PI / 5.0,
            self_check: OnceLock::new(),
        }
    }

    pub fn with_safe_radius(mut self, r: f64) -> Self {
        self.safe_radius = r;
        self.self_check = OnceLock::new();
        self
    }

    /// Parses `g_choice`, `newton_tol`, `newton_max_iter`, `safe_radius`
    /// (and `g_table_s`/`g_table_g` for a custom `g`) from TOML.
    pub fn from_toml(text: &str) -> Result<Self, LorentzError> {
        let file: DeformationConfigFile = toml::from_str(text).map_err(|e| LorentzError::Config(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn from_file(f: DeformationConfigFile) -> Result<Self, LorentzError> {
        let g = match f.g_choice.as_deref().unwrap_or("secant") {
            "secant" => GChoice::SecantG,
            "unit" => GChoice::UnitG,
            "custom" => {
                let t = TabulatedG {
                    s: f.g_table_s.ok_or_else(|| LorentzError::Config("custom g needs g_table_s".into()))?,
                    g: f.g_table_g.ok_or_else(|| LorentzError::Config("custom g needs g_table_g".into()))?,
                };
                t.validate()?;
                GChoice::Custom(t)
            }
            other => return Err(LorentzError::Config(format!("unknown g_choice '{other}'"))),
        };
        let mut cfg = DeformationConfig::new(g);
        if let Some(v) = f.newton_tol {
            cfg.newton_tol = v;
        }
        if let Some(v) = f.newton_max_iter {
            cfg.newton_max_iter = v;
        }
        if let Some(v) = f.safe_radius {
            if v.is_nan() || v <= 0.0 {
                return Err(LorentzError::Config("safe_radius must be positive".into()));
            }
            cfg.safe_radius = v;
        }
        Ok(cfg)
    }

    /// Smallest `det ∂n/∂k̃` over the safe ball, computed once per radius.
    pub fn safe_region_min_det(&self) -> f64 {
        *self.self_check.get_or_init(|| cached_min_det(self.safe_radius))
    }

    fn ensure_safe_region(&self) -> Result<(), LorentzError> {
        let d = self.safe_region_min_det();
        if d <= 0.0 {
            return Err(LorentzError::SingularSafeRegion(d));
        }
        Ok(())
    }
}

fn cached_min_det(r: f64) -> f64 {
    static CACHE: OnceLock<Mutex<Vec<(u64, f64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    if let Some(&(_, d)) = cache.lock().unwrap().iter().find(|(bits, _)| *bits == r.to_bits()) {
        return d;
    }
    let d = safe_region_min_det(r);
    cache.lock().unwrap().push((r.to_bits(), d));
    d
}

/// Minimum of `det(√3 ∂n/∂k)` over a sample of the ball `|δ| ≤ r`, both
/// chiralities. The sample is a 17³ lattice clipped to the ball plus the
/// lattice directions pushed onto the sphere.
pub fn safe_region_min_det(r: f64) -> f64 {
    let m = 8i32;
    let mut worst = f64::INFINITY;
    for i in -m..=m {
        for j in -m..=m {
            for l in -m..=m {
                let v = [i, j, l].map(|x| x as f64 / m as f64);
                let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                let mut pts = Vec::with_capacity(2);
                if len <= 1.0 {
                    pts.push(v.map(|x| x * r));
                }
                if len > 0.0 {
                    pts.push(v.map(|x| x * r / len));
                }
                for p in pts {
                    for c in [Chirality::Plus, Chirality::Minus] {
                        let jac = n_jacobian(WaveVector::from_array(p), c).map(|row| row.map(|x| x * SQRT3));
                        worst = worst.min(det3(&jac));
                    }
                }
            }
        }
    }
    worst
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn solve3(m: &[[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let d = det3(m);
    if d.abs() < 1e-300 {
        return None;
    }
    let mut out = [0.0; 3];
    for (col, o) in out.iter_mut().enumerate() {
        let mut mc = *m;
        for row in 0..3 {
            mc[row][col] = b[row];
        }
        *o = det3(&mc) / d;
    }
    Some(out)
}

/// How region `i` of a walk reduces to the origin.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionFrame {
    pub center: WaveVector,
    /// `s_i` in `A^c(k_i + δ) = s_i A^{c_i}(δ)`.
    pub sign: f64,
    pub local_chirality: Chirality,
}

pub fn region_frame(region: usize, c: Chirality) -> Result<RegionFrame, LorentzError> {
    if region > 3 {
        return Err(LorentzError::InvalidRegion(region));
    }
    let center = special_point(region);
    let sign = lambda_scalar(center, c).round();
    let local_chirality = if region == 1 || region == 2 { c.flip() } else { c };
    Ok(RegionFrame { center, sign, local_chirality })
}

/// A solution `(ω, k)` of the walk's dispersion relation, attached to one of
/// the four regions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OnShellPoint {
    /// Local frequency in `(−π/2, π/2)` with `sin²ω = |n(k)|²`.
    pub omega: f64,
    pub k: WaveVector,
    pub region: usize,
    pub chirality: Chirality,
}

impl OnShellPoint {
    pub fn new(omega: f64, k: WaveVector, region: usize, chirality: Chirality) -> Result<Self, LorentzError> {
        let pt = OnShellPoint { omega, k, region, chirality };
        let r = pt.shell_residual()?;
        if r > SHELL_TOL {
            return Err(LorentzError::NotOnShell(r));
        }
        Ok(pt)
    }

    /// The positive- or negative-energy point above `k`.
    pub fn from_k(k: WaveVector, region: usize, chirality: Chirality, positive: bool) -> Result<Self, LorentzError> {
        let frame = region_frame(region, chirality)?;
        let n = n_vector(k - frame.center, frame.local_chirality);
        let w = norm3(n).min(1.0).asin();
        Ok(OnShellPoint { omega: if positive { w } else { -w }, k, region, chirality })
    }

    pub fn frame(&self) -> Result<RegionFrame, LorentzError> {
        region_frame(self.region, self.chirality)
    }

    /// `δ = k − k_i`.
    pub fn offset(&self) -> Result<WaveVector, LorentzError> {
        Ok(self.k - self.frame()?.center)
    }

    /// The local vector `n^{(i)}(k) = n^{c_i}(k − k_i)`.
    pub fn local_n(&self) -> Result<[f64; 3], LorentzError> {
        let f = self.frame()?;
        Ok(n_vector(self.k - f.center, f.local_chirality))
    }

    pub fn shell_residual(&self) -> Result<f64, LorentzError> {
        let n = self.local_n()?;
        Ok((self.omega.sin().powi(2) - (n[0] * n[0] + n[1] * n[1] + n[2] * n[2])).abs())
    }

    /// The eigenphase of the full walk: `A(k)ψ = e^{−i ω_walk} ψ`.
    pub fn walk_phase(&self) -> Result<f64, LorentzError> {
        let f = self.frame()?;
        Ok(if f.sign < 0.0 { self.omega + PI } else { self.omega })
    }
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// `D(ω, k) = g · (sin ω, n^{(i)}(k))`.
pub fn deformation_d(pt: &OnShellPoint, cfg: &DeformationConfig) -> Result<FourVector, LorentzError> {
    let n = pt.local_n()?;
    let s = pt.omega.sin();
    let g = cfg.g_choice.at(s * s);
    Ok(FourVector::new(g * s, g * n[0], g * n[1], g * n[2]))
}

/// Inverts `D` within the safe ball around `k_region`.
pub fn deformation_d_inverse(
    p: FourVector,
    region: usize,
    chirality: Chirality,
    cfg: &DeformationConfig,
) -> Result<OnShellPoint, LorentzError> {
    let frame = region_frame(region, chirality)?;
    let scale = 1.0 + p.to_array().iter().map(|v| v * v).sum::<f64>();
    if p.minkowski_sq().abs() > CONE_TOL * scale {
        return Err(LorentzError::OffShellInput(p.minkowski_sq()));
    }
    cfg.ensure_safe_region()?;
    let (omega, g) = cfg.g_choice.invert_energy(p.p0)?;
    let target = p.spatial().map(|v| v / g);
    let delta = solve_n(target, frame.local_chirality, cfg)?;
    let norm = norm3(delta);
    if norm > cfg.safe_radius * (1.0 + 1e-9) {
        return Err(LorentzError::OutsideSafeRegion { norm, radius: cfg.safe_radius });
    }
    Ok(OnShellPoint { omega, k: frame.center + WaveVector::from_array(delta), region, chirality })
}

/// Damped Newton for `n^c(δ) = target`.
fn solve_n(target: [f64; 3], c: Chirality, cfg: &DeformationConfig) -> Result<[f64; 3], LorentzError> {
    let residual = |d: [f64; 3]| {
        let n = n_vector(WaveVector::from_array(d), c);
        [n[0] - target[0], n[1] - target[1], n[2] - target[2]]
    };
    let maxabs = |r: [f64; 3]| r.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut d = target.map(|t| SQRT3 * t.clamp(-1.0, 1.0).asin());
    let mut r = residual(d);
    let mut err = maxabs(r);
    for it in 0..cfg.newton_max_iter {
        if err < cfg.newton_tol {
            return Ok(d);
        }
        let jac = n_jacobian(WaveVector::from_array(d), c);
        let step = solve3(&jac, r).ok_or(LorentzError::NoConvergence { iterations: it, residual: err })?;
        let mut t = 1.0;
        loop {
            let cand = [d[0] - t * step[0], d[1] - t * step[1], d[2] - t * step[2]];
            let rc = residual(cand);
            let ec = maxabs(rc);
            if ec < err || t < 1e-6 {
                d = cand;
                r = rc;
                err = ec;
                break;
            }
            t *= 0.5;
        }
    }
    if err < cfg.newton_tol {
        return Ok(d);
    }
    Err(LorentzError::NoConvergence { iterations: cfg.newton_max_iter, residual: err })
}

/// `D⁻¹ ∘ L ∘ D`.
pub fn deformed_transform(
    pt: &OnShellPoint,
    l: &LorentzTransform,
    cfg: &DeformationConfig,
) -> Result<OnShellPoint, LorentzError> {
    let p = deformation_d(pt, cfg)?;
    deformation_d_inverse(l.apply(p), pt.region, pt.chirality, cfg)
}

/// [`deformed_transform`] for `L = exp((β − iθ)·σ/2)`.
pub fn deformed_boost(
    pt: &OnShellPoint,
    beta: [f64; 3],
    theta: [f64; 3],
    cfg: &DeformationConfig,
) -> Result<OnShellPoint, LorentzError> {
    deformed_transform(pt, &LorentzTransform::new(beta, theta), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::{dispersion, walk_operator_k};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn cfg() -> DeformationConfig {
        DeformationConfig::default()
    }

    #[test]
    fn origin_maps_to_zero() {
        let pt = OnShellPoint::new(0.0, WaveVector::zero(), 0, Chirality::Plus).unwrap();
        assert_eq!(deformation_d(&pt, &cfg()).unwrap(), FourVector::default());
        let back = deformation_d_inverse(FourVector::default(), 0, Chirality::Plus, &cfg()).unwrap();
        assert_eq!(back.k, WaveVector::zero());
        assert_eq!(back.omega, 0.0);
    }

    #[test]
    fn secant_on_axis() {
        let eps = 1e-3;
        let k = WaveVector::new(eps, 0.0, 0.0);
        let w = dispersion(k, Chirality::Plus);
        let pt = OnShellPoint::new(w, k, 0, Chirality::Plus).unwrap();
        let p = deformation_d(&pt, &cfg()).unwrap();
        let expect = FourVector::new(w.tan(), (eps / SQRT3).sin() / w.cos(), 0.0, 0.0);
        assert!(p.max_abs_diff(expect) < 1e-15);
    }

    #[test]
    fn off_cone_input_rejected() {
        let p = FourVector::new(0.0, 0.1f64.sqrt(), 0.0, 0.0);
        assert!(matches!(deformation_d_inverse(p, 0, Chirality::Plus, &cfg()), Err(LorentzError::OffShellInput(_))));
    }

    #[test]
    fn energy_scale_is_invariant() {
        let w = PI / 2.0 - 1e-6;
        let pt = OnShellPoint { omega: w, k: WaveVector::zero(), region: 0, chirality: Chirality::Plus };
        assert!(deformation_d(&pt, &cfg()).unwrap().p0 > 1e5);
    }

    #[test]
    fn unit_g_image_is_bounded() {
        let c = DeformationConfig::new(GChoice::UnitG);
        let p = FourVector::new(2.0, 2.0, 0.0, 0.0);
        assert!(matches!(deformation_d_inverse(p, 0, Chirality::Plus, &c), Err(LorentzError::OutsideImage(_))));
    }

    #[test]
    fn safe_region_jacobian_is_nonsingular() {
        let d = cfg().safe_region_min_det();
        assert!(d > 0.2, "min det {d}");
        // on the axes det = cos(2k̃)·cos(k̃), which vanishes at |k̃| = π/4
        assert!(safe_region_min_det(SQRT3 * PI / 4.0).abs() < 1e-12);
        assert!(safe_region_min_det(0.3 * SQRT3 * PI) < 0.0);
    }

    #[test]
    fn region_frames_match_operator_identities() {
        let d = WaveVector::new(0.13, -0.27, 0.41);
        for c in [Chirality::Plus, Chirality::Minus] {
            for i in 0..4 {
                let f = region_frame(i, c).unwrap();
                let lhs = walk_operator_k(f.center + d, c);
                let rhs = walk_operator_k(d, f.local_chirality).scale(f.sign.into());
                assert!(lhs.max_diff(&rhs) < 1e-14, "region {i} {c:?}");
            }
        }
        assert!(matches!(region_frame(4, Chirality::Plus), Err(LorentzError::InvalidRegion(4))));
    }

    #[test]
    fn custom_table_roundtrip() {
        // tabulate the secant choice
        let s: Vec<f64> = (0..=200).map(|i| 0.99 * i as f64 / 200.0).collect();
        let g: Vec<f64> = s.iter().map(|v| 1.0 / (1.0 - v).sqrt()).collect();
        let table = TabulatedG { s, g };
        table.validate().unwrap();
        let c = DeformationConfig::new(GChoice::Custom(table));
        let pt = OnShellPoint::from_k(WaveVector::new(0.3, -0.2, 0.5), 0, Chirality::Plus, true).unwrap();
        let back = deformation_d_inverse(deformation_d(&pt, &c).unwrap(), 0, Chirality::Plus, &c).unwrap();
        assert_abs_diff_eq!(back.omega, pt.omega, epsilon = 1e-9);
        assert_abs_diff_eq!(back.k.kz, pt.k.kz, epsilon = 1e-9);
        let bad = TabulatedG { s: vec![0.0, 0.5], g: vec![2.0, 2.0] };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn config_from_toml() {
        let c = DeformationConfig::from_toml("g_choice = \"unit\"\nnewton_tol = 1e-13\nsafe_radius = 1.0\n").unwrap();
        assert_eq!(c.g_choice, GChoice::UnitG);
        assert_eq!(c.newton_tol, 1e-13);
        assert_eq!(c.safe_radius, 1.0);
        assert!(DeformationConfig::from_toml("colour = 3").is_err());
    }

    #[test]
    fn jacobian_is_identity_in_rescaled_units() {
        // D(ω, k̃) near 0, differentiated numerically along ω and k̃
        let h = 1e-6;
        let c = cfg();
        let pt = |kt: [f64; 3], pos: bool| {
            OnShellPoint::from_k(WaveVector::from_rescaled(kt), 0, Chirality::Plus, pos).unwrap()
        };
        for a in 0..3 {
            let mut kt = [0.0; 3];
            kt[a] = h;
            let p = deformation_d(&pt(kt, true), &c).unwrap().to_array();
            for b in 0..3 {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(p[b + 1] / h, expect, epsilon = 1e-6);
            }
            assert_abs_diff_eq!(p[0] / h, 1.0, epsilon = 1e-6);
        }
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(
            r in 0.0f64..1.0, u in -1.0f64..1.0, phi in 0.0f64..(2.0 * PI),
            region in 0usize..4, plus in any::<bool>(), pos in any::<bool>()
        ) {
            let c = if plus { Chirality::Plus } else { Chirality::Minus };
            let cfg = cfg();
            let rad = cfg.safe_radius * r.cbrt() * 0.999;
            let st = (1.0 - u * u).sqrt();
            let d = WaveVector::new(rad * st * phi.cos(), rad * st * phi.sin(), rad * u);
            let pt = OnShellPoint::from_k(special_point(region) + d, region, c, pos).unwrap();
            prop_assert!(pt.shell_residual().unwrap() < 1e-12);
            let p = deformation_d(&pt, &cfg).unwrap();
            prop_assert!(p.minkowski_sq().abs() < 1e-10);
            let back = deformation_d_inverse(p, region, c, &cfg).unwrap();
            prop_assert!((back.omega - pt.omega).abs() < 1e-9);
            prop_assert!((back.k - pt.k).norm() < 1e-9);
            // the walk eigenphase agrees with the full operator
            let w = pt.walk_phase().unwrap();
            let a = walk_operator_k(pt.k, c);
            prop_assert!((a.trace().re / 2.0 - w.cos()).abs() < 1e-12);
        }
    }
}
