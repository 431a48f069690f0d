//! Verifier for covariance of the walk kernel `sin ω I − n·σ` under the
//! deformed Lorentz action with spinor representatives `Γ`, `Γ̃`.

use std::io::Write;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::deformation::{deformed_transform, region_frame};
use super::{DeformationConfig, LorentzError, LorentzTransform, OnShellPoint};
use crate::spinor::SpinorMatrix;
use crate::walk::{n_vector, special_point, Chirality, WaveVector};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    /// Max entrywise deviation after normalizing both sides by their
    /// Frobenius norms (0 when both sides vanish).
    pub residual: f64,
    /// Same comparison with `g` dropped and no normalization.
    pub raw_residual: f64,
    pub image: OnShellPoint,
}

/// The full walk kernel `sin ω_walk I − n^c(k)·σ^c` at a point.
fn kernel(pt: &OnShellPoint) -> Result<SpinorMatrix, LorentzError> {
    let w = pt.walk_phase()?;
    let n = n_vector(pt.k, pt.chirality);
    Ok(SpinorMatrix::identity().scale(w.sin().into()) - pt.chirality.dot_sigma(n))
}

fn normalized_diff(a: &SpinorMatrix, b: &SpinorMatrix) -> f64 {
    let (na, nb) = (a.frobenius(), b.frobenius());
    match (na == 0.0, nb == 0.0) {
        (true, true) => 0.0,
        (true, false) | (false, true) => 1.0,
        _ => a.scale((1.0 / na).into()).max_diff(&b.scale((1.0 / nb).into())),
    }
}

fn representatives(l: &LorentzTransform, local: Chirality, swapped: bool) -> (SpinorMatrix, SpinorMatrix) {
    let (right, left) = (l.right(), l.left());
    let sy = SpinorMatrix::sigma_y();
    // a transposed-σ kernel is σy-conjugate to the left-handed form
    let (gamma, gamma_t) = match local {
        Chirality::Plus => (right, left),
        Chirality::Minus => (sy * left * sy, sy * right * sy),
    };
    if swapped {
        (gamma_t, gamma)
    } else {
        (gamma, gamma_t)
    }
}

fn check(
    pt: &OnShellPoint,
    l: &LorentzTransform,
    cfg: &DeformationConfig,
    swapped: bool,
) -> Result<SymmetryReport, LorentzError> {
    let image = deformed_transform(pt, l, cfg)?;
    let frame = region_frame(pt.region, pt.chirality)?;
    let (gamma, gamma_t) = representatives(l, frame.local_chirality, swapped);
    let gamma_t_inv = gamma_t.inverse().expect("SL(2,C) element is invertible");
    let g = cfg.g_choice.at(pt.omega.sin().powi(2));
    let g_img = cfg.g_choice.at(image.omega.sin().powi(2));
    let (k, k_img) = (kernel(pt)?, kernel(&image)?);
    let lhs = k.scale(Complex64::from(g));
    let rhs = gamma_t_inv * k_img.scale(Complex64::from(g_img)) * gamma;
    let raw_rhs = gamma_t_inv * k_img * gamma;
    Ok(SymmetryReport { residual: normalized_diff(&lhs, &rhs), raw_residual: k.max_diff(&raw_rhs), image })
}

/// Checks `g K(ω,k) = Γ̃⁻¹ g' K(ω',k') Γ` with `(ω',k')` the deformed image.
///
/// `Γ = Λ`, `Γ̃ = Λ̃` when the region's local walk uses `σ`; where it uses
/// `σᵀ` the two representations trade places (up to `σy` conjugation).
pub fn check_symmetry(
    pt: &OnShellPoint,
    beta: [f64; 3],
    theta: [f64; 3],
    cfg: &DeformationConfig,
) -> Result<SymmetryReport, LorentzError> {
    check(pt, &LorentzTransform::new(beta, theta), cfg, false)
}

/// Negative control: [`check_symmetry`] with `Γ` and `Γ̃` exchanged.
pub fn check_symmetry_swapped(
    pt: &OnShellPoint,
    beta: [f64; 3],
    theta: [f64; 3],
    cfg: &DeformationConfig,
) -> Result<SymmetryReport, LorentzError> {
    check(pt, &LorentzTransform::new(beta, theta), cfg, true)
}

fn uniform_ball<R: Rng>(rng: &mut R, radius: f64) -> [f64; 3] {
    loop {
        let v = [0; 3].map(|_| rng.gen_range(-1.0..1.0));
        if v.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return v.map(|x| x * radius);
        }
    }
}

/// Uniform point in the ball `|k − k_region| ≤ fraction · safe_radius`,
/// random energy sign.
pub fn sample_on_shell_point<R: Rng>(
    rng: &mut R,
    region: usize,
    c: Chirality,
    cfg: &DeformationConfig,
    fraction: f64,
) -> Result<OnShellPoint, LorentzError> {
    let d = uniform_ball(rng, fraction * cfg.safe_radius);
    OnShellPoint::from_k(special_point(region) + WaveVector::from_array(d), region, c, rng.gen())
}

/// Uniform rapidity in the ball `|β| ≤ max`.
pub fn sample_beta<R: Rng>(rng: &mut R, max: f64) -> [f64; 3] {
    uniform_ball(rng, max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoostScanRow {
    pub beta: [f64; 3],
    pub input: OnShellPoint,
    pub output: OnShellPoint,
    pub residual: f64,
}

pub fn write_boost_scan_csv<W: Write>(rows: &[BoostScanRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "beta_x,beta_y,beta_z,omega_in,kx_in,ky_in,kz_in,omega_out,kx_out,ky_out,kz_out,residual")?;
    for r in rows {
        let vals = [
            r.beta[0],
            r.beta[1],
            r.beta[2],
            r.input.omega,
            r.input.k.kx,
            r.input.k.ky,
            r.input.k.kz,
            r.output.omega,
            r.output.k.kx,
            r.output.k.ky,
            r.output.k.kz,
            r.residual,
        ];
        let line: Vec<String> = vals.iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}
