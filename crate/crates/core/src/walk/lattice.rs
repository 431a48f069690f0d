//! Finite periodic grids and evolution of one-particle states.
//!
//! The body-centred lattice is embedded in an `N³` cubic torus with integer
//! steps `(±1,±1,±1)`; the physical `1/√3` lives only in `k`. A grid
//! frequency `m` corresponds to `k = √3 · 2πm/N`.

use std::f64::consts::PI;
use std::io::{Read, Write};

use num_complex::Complex64;
use rand::Rng;
use rustfft::{Fft, FftPlanner};
use thiserror::Error;

use super::{dispersion, eigenmodes, lambda_scalar, n_vector, neighborhood_matrices, Chirality, WaveVector, SQRT3};

const MAGIC: &[u8; 4] = b"WQW1";
const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum WalkError {
    #[error("grid side must be even and positive, got {0}")]
    OddGrid(usize),
    #[error("state is not normalized: norm² = {0}")]
    NotNormalized(f64),
    #[error("amplitude buffer has length {got}, expected {expected}")]
    Shape { got: usize, expected: usize },
    #[error("malformed state file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A normalized two-component wavefunction on the periodic grid.
///
/// Amplitudes are stored site by site with `x` fastest, the two spinor
/// components adjacent.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeState {
    n: usize,
    amps: Vec<Complex64>,
}

/// Gaussian wave packet parameters, in grid units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PacketSpec {
    pub center: [f64; 3],
    pub width: f64,
    pub k_center: WaveVector,
}

fn check_side(n: usize) -> Result<(), WalkError> {
    if n == 0 || n % 2 == 1 {
        return Err(WalkError::OddGrid(n));
    }
    Ok(())
}

impl LatticeState {
    /// Wraps raw amplitudes; they must already be normalized.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self, WalkError> {
        check_side(n)?;
        let expected = 2 * n * n * n;
        if amps.len() != expected {
            return Err(WalkError::Shape { got: amps.len(), expected });
        }
        let s = LatticeState { n, amps };
        s.check_normalized()?;
        Ok(s)
    }

    /// Normalizes `amps` before wrapping.
    pub fn normalized(n: usize, mut amps: Vec<Complex64>) -> Result<Self, WalkError> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(WalkError::NotNormalized(norm * norm));
        }
        amps.iter_mut().for_each(|z| *z /= norm);
        Self::from_amplitudes(n, amps)
    }

    /// A single site occupied with the given (normalized) spinor.
    pub fn delta(n: usize, site: [usize; 3], spinor: [Complex64; 2]) -> Result<Self, WalkError> {
        check_side(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 2 * n * n * n];
        let i = index(n, site);
        amps[2 * i] = spinor[0];
        amps[2 * i + 1] = spinor[1];
        Self::normalized(n, amps)
    }

    /// Independent complex Gaussian amplitudes, normalized.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Result<Self, WalkError> {
        check_side(n)?;
        let amps =
            (0..2 * n * n * n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        Self::normalized(n, amps)
    }

    /// Gaussian envelope times a plane wave at `k_center`, carrying the
    /// positive-frequency spinor of `A(k_center)`.
    pub fn gaussian_packet(n: usize, spec: &PacketSpec, c: Chirality) -> Result<Self, WalkError> {
        check_side(n)?;
        let spinor = eigenmodes(spec.k_center, c)[0].spinor;
        let k_int = spec.k_center.to_array().map(|v| v / SQRT3);
        let mut amps = Vec::with_capacity(2 * n * n * n);
        for z in 0..n {
            for y in 0..n {
                for x in 0..n {
                    let pos = [x as f64, y as f64, z as f64];
                    let mut r2 = 0.0;
                    let mut phase = 0.0;
                    for a in 0..3 {
                        let d = min_image(pos[a] - spec.center[a], n as f64);
                        r2 += d * d;
                        phase += k_int[a] * (spec.center[a] + d);
                    }
                    let env = (-r2 / (4.0 * spec.width * spec.width)).exp();
                    let w = Complex64::from_polar(env, phase);
                    amps.push(w * spinor[0]);
                    amps.push(w * spinor[1]);
                }
            }
        }
        Self::normalized(n, amps)
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn at(&self, site: [usize; 3]) -> [Complex64; 2] {
        let i = index(self.n, site);
        [self.amps[2 * i], self.amps[2 * i + 1]]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    fn check_normalized(&self) -> Result<(), WalkError> {
        let ns = self.norm_sqr();
        if (ns - 1.0).abs() > NORM_TOL {
            return Err(WalkError::NotNormalized(ns));
        }
        Ok(())
    }

    /// Largest entrywise difference between two states on the same grid.
    pub fn max_diff(&self, other: &LatticeState) -> f64 {
        assert_eq!(self.n, other.n, "grid sides differ");
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Per-axis probability density marginals.
    fn site_probabilities(&self) -> impl Iterator<Item = ([usize; 3], f64)> + '_ {
        let n = self.n;
        (0..n * n * n).map(move |i| {
            let site = [i % n, (i / n) % n, i / (n * n)];
            (site, self.amps[2 * i].norm_sqr() + self.amps[2 * i + 1].norm_sqr())
        })
    }

    /// Circular mean position per axis, in `[0, N)`.
    pub fn centroid(&self) -> [f64; 3] {
        self.circular_moments().map(|(mean, _)| mean)
    }

    /// Root-sum of the per-axis circular spreads.
    pub fn spread(&self) -> f64 {
        self.circular_moments().iter().map(|(_, var)| var).sum::<f64>().sqrt()
    }

    fn circular_moments(&self) -> [(f64, f64); 3] {
        let n = self.n as f64;
        let mut acc = [Complex64::new(0.0, 0.0); 3];
        for (site, p) in self.site_probabilities() {
            for a in 0..3 {
                acc[a] += Complex64::from_polar(p, 2.0 * PI * site[a] as f64 / n);
            }
        }
        let scale = n / (2.0 * PI);
        acc.map(|m| {
            let mean = (m.arg() * scale).rem_euclid(n);
            let r = m.norm().clamp(1e-300, 1.0);
            (mean, -2.0 * r.ln() * scale * scale)
        })
    }

    /// Applies `A^{n_steps}` in momentum space.
    pub fn step(&self, c: Chirality, n_steps: u64) -> Result<LatticeState, WalkError> {
        check_side(self.n)?;
        self.check_normalized()?;
        if n_steps == 0 {
            return Ok(self.clone());
        }
        let n = self.n;
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let mut comps = [self.component(0), self.component(1)];
        for comp in comps.iter_mut() {
            fft3(comp, n, fwd.as_ref());
        }
        let t = n_steps as f64;
        let [c0, c1] = &mut comps;
        for (i, pair) in c0.iter_mut().zip(c1.iter_mut()).enumerate() {
            let m = [i % n, (i / n) % n, i / (n * n)];
            let k = WaveVector::from_array(m.map(|v| SQRT3 * 2.0 * PI * v as f64 / n as f64));
            let omega = dispersion(k, c);
            let lam = lambda_scalar(k, c);
            let nv = n_vector(k, c);
            let s = omega.sin();
            // A^t = cos(tω) I − i sin(tω)/sin ω (n·σ)
            let ratio = if s.abs() < 1e-12 { t * lam.signum().powf(t - 1.0) } else { (t * omega).sin() / s };
            let op = c.dot_sigma(nv).scale(Complex64::new(0.0, -ratio));
            let cos_t = Complex64::new((t * omega).cos(), 0.0);
            let (a, b) = (*pair.0, *pair.1);
            *pair.0 = cos_t * a + op.a11 * a + op.a12 * b;
            *pair.1 = cos_t * b + op.a21 * a + op.a22 * b;
        }
        let scale = 1.0 / (n * n * n) as f64;
        for comp in comps.iter_mut() {
            fft3(comp, n, inv.as_ref());
            comp.iter_mut().for_each(|z| *z *= scale);
        }
        Ok(self.with_components(&comps))
    }

    /// One step applied directly as `ψ'(x) = Σ_y A_y ψ(x + y)`.
    pub fn step_position_space(&self, c: Chirality) -> Result<LatticeState, WalkError> {
        check_side(self.n)?;
        self.check_normalized()?;
        let n = self.n;
        let scheme = neighborhood_matrices(c);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for z in 0..n {
            for y in 0..n {
                for x in 0..n {
                    let dst = index(n, [x, y, z]);
                    let mut acc = [Complex64::new(0.0, 0.0); 2];
                    for (s, m) in scheme.signs.iter().zip(&scheme.matrices) {
                        let src = [x, y, z]
                            .iter()
                            .zip(s)
                            .map(|(&p, &d)| (p as i64 + d as i64).rem_euclid(n as i64) as usize)
                            .collect::<Vec<_>>();
                        let v = self.at([src[0], src[1], src[2]]);
                        let r = m.apply(v);
                        acc[0] += r[0];
                        acc[1] += r[1];
                    }
                    out[2 * dst] = acc[0];
                    out[2 * dst + 1] = acc[1];
                }
            }
        }
        Ok(LatticeState { n, amps: out })
    }

    fn component(&self, s: usize) -> Vec<Complex64> {
        self.amps.iter().skip(s).step_by(2).copied().collect()
    }

    fn with_components(&self, comps: &[Vec<Complex64>; 2]) -> LatticeState {
        let amps = comps[0].iter().zip(&comps[1]).flat_map(|(a, b)| [*a, *b]).collect();
        LatticeState { n: self.n, amps }
    }

    /// Writes the binary `WQW1` container.
    pub fn write_wqw1<W: Write>(&self, c: Chirality, mut w: W) -> Result<(), WalkError> {
        w.write_all(MAGIC)?;
        w.write_all(&(self.n as u32).to_le_bytes())?;
        w.write_all(&[match c {
            Chirality::Plus => 0u8,
            Chirality::Minus => 1u8,
        }])?;
        for z in &self.amps {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_wqw1<R: Read>(mut r: R) -> Result<(LatticeState, Chirality), WalkError> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(WalkError::Format(format!("bad magic {magic:?}")));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        let n = u32::from_le_bytes(b4) as usize;
        let mut b1 = [0u8; 1];
        r.read_exact(&mut b1)?;
        let c = match b1[0] {
            0 => Chirality::Plus,
            1 => Chirality::Minus,
            other => return Err(WalkError::Format(format!("bad chirality byte {other}"))),
        };
        check_side(n)?;
        let mut amps = Vec::with_capacity(2 * n * n * n);
        let mut b8 = [0u8; 8];
        for _ in 0..2 * n * n * n {
            r.read_exact(&mut b8)?;
            let re = f64::from_le_bytes(b8);
            r.read_exact(&mut b8)?;
            let im = f64::from_le_bytes(b8);
            amps.push(Complex64::new(re, im));
        }
        Ok((LatticeState::from_amplitudes(n, amps)?, c))
    }
}

/// Moves `new` by multiples of `N` so it is the image closest to `prev`.
pub fn unwrap_position(prev: f64, new: f64, n: usize) -> f64 {
    prev + min_image(new - prev, n as f64)
}

fn min_image(d: f64, n: f64) -> f64 {
    d - n * (d / n).round()
}

fn index(n: usize, site: [usize; 3]) -> usize {
    (site[2] * n + site[1]) * n + site[0]
}

/// In-place 3-D transform (unnormalized) of an x-fastest `N³` array.
fn fft3(data: &mut [Complex64], n: usize, fft: &dyn Fft<f64>) {
    // x: contiguous rows
    for row in data.chunks_exact_mut(n) {
        fft.process(row);
    }
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for stride in [n, n * n] {
        for base in 0..n * n * n {
            // visit each line once, from its first element
            if (base / stride) % n != 0 {
                continue;
            }
            for (j, v) in line.iter_mut().enumerate() {
                *v = data[base + j * stride];
            }
            fft.process(&mut line);
            for (j, v) in line.iter().enumerate() {
                data[base + j * stride] = *v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::group_velocity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn up() -> [Complex64; 2] {
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
    }

    #[test]
    fn rejects_odd_grid() {
        assert!(matches!(LatticeState::delta(5, [0, 0, 0], up()), Err(WalkError::OddGrid(5))));
    }

    #[test]
    fn rejects_unnormalized() {
        let amps = vec![Complex64::new(1.0, 0.0); 2 * 8];
        assert!(matches!(LatticeState::from_amplitudes(2, amps), Err(WalkError::NotNormalized(_))));
    }

    #[test]
    fn zero_steps_is_identity() {
        let s = LatticeState::random(4, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(s.step(Chirality::Plus, 0).unwrap(), s);
    }

    #[test]
    fn delta_spreads_to_eight_sites() {
        let n = 8;
        for c in [Chirality::Plus, Chirality::Minus] {
            let s = LatticeState::delta(n, [0, 0, 0], up()).unwrap();
            let out = s.step(c, 1).unwrap();
            let scheme = neighborhood_matrices(c);
            let mut expected = vec![Complex64::new(0.0, 0.0); 2 * n * n * n];
            for (sg, m) in scheme.signs.iter().zip(&scheme.matrices) {
                let site = sg.map(|d| (-d).rem_euclid(n as i32) as usize);
                let i = index(n, site);
                expected[2 * i] = m.a11;
                expected[2 * i + 1] = m.a21;
            }
            let expected = LatticeState { n, amps: expected };
            assert!(out.max_diff(&expected) < 1e-12);
            assert!(out.step_position_space(c).is_ok());
            assert!(s.step_position_space(c).unwrap().max_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn fft_step_matches_shift_step() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [4, 8] {
            let s = LatticeState::random(n, &mut rng).unwrap();
            for c in [Chirality::Plus, Chirality::Minus] {
                let a = s.step(c, 1).unwrap();
                let b = s.step_position_space(c).unwrap();
                assert!(a.max_diff(&b) < 1e-10);
                assert!((b.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn power_matches_repeated_steps() {
        let s = LatticeState::random(4, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let mut r = s.clone();
        for _ in 0..5 {
            r = r.step_position_space(Chirality::Minus).unwrap();
        }
        assert!(s.step(Chirality::Minus, 5).unwrap().max_diff(&r) < 1e-10);
    }

    #[test]
    fn wqw1_roundtrip() {
        let s = LatticeState::random(4, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        let mut buf = Vec::new();
        s.write_wqw1(Chirality::Minus, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"WQW1");
        assert_eq!(buf.len(), 4 + 4 + 1 + 16 * 2 * 64);
        let (back, c) = LatticeState::read_wqw1(buf.as_slice()).unwrap();
        assert_eq!(back, s);
        assert_eq!(c, Chirality::Minus);
    }

    #[test]
    fn packet_drifts_at_group_velocity() {
        let n = 64;
        // away from the cone tip so the band curvature across the packet is small
        let kc = WaveVector::new(1.5, 0.5, 0.3);
        let spec = PacketSpec { center: [32.0, 32.0, 32.0], width: 8.0, k_center: kc };
        let c = Chirality::Plus;
        let s = LatticeState::gaussian_packet(n, &spec, c).unwrap();
        let c0 = s.centroid();
        for a in 0..3 {
            assert!((c0[a] - 32.0).abs() < 1e-9);
        }
        let steps = 20;
        let out = s.step(c, steps).unwrap();
        let c1 = out.centroid();
        // drift per step in grid units is √3 ∇_k ω
        let v = group_velocity(kc, c).map(|g| g * SQRT3);
        for a in 0..3 {
            let drift = (unwrap_position(c0[a], c1[a], n) - c0[a]) / steps as f64;
            assert!((drift - v[a]).abs() < 0.02 * v.iter().map(|x| x.abs()).fold(0.0, f64::max));
        }
        assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
    }
}
