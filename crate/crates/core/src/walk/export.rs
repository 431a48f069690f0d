//! Tabulated dispersion over the Brillouin zone.

use std::io::Write;

use super::{dispersion, lambda_scalar, n_vector, Chirality, WaveVector, SQRT3};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DispersionRow {
    pub k: WaveVector,
    pub omega: f64,
    pub n: [f64; 3],
    pub lambda: f64,
}

impl DispersionRow {
    pub fn at(k: WaveVector, c: Chirality) -> Self {
        DispersionRow { k, omega: dispersion(k, c), n: n_vector(k, c), lambda: lambda_scalar(k, c) }
    }
}

/// Samples `k_α = √3π(2j/R − 1)`, `j = 0..R`, on each axis and reduces every
/// point into the zone. Rows come out with `kx` varying fastest.
pub fn dispersion_grid(resolution: usize, c: Chirality) -> Vec<DispersionRow> {
    let axis: Vec<f64> =
        (0..resolution).map(|j| SQRT3 * std::f64::consts::PI * (2.0 * j as f64 / resolution as f64 - 1.0)).collect();
    let mut rows = Vec::with_capacity(resolution.pow(3));
    for &kz in &axis {
        for &ky in &axis {
            for &kx in &axis {
                rows.push(DispersionRow::at(WaveVector::new(kx, ky, kz).reduce_to_zone(), c));
            }
        }
    }
    rows
}

/// 17 significant digits.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_dispersion_csv<W: Write>(rows: &[DispersionRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "kx,ky,kz,omega,nx,ny,nz,lambda,kx_rescaled,ky_rescaled,kz_rescaled")?;
    for r in rows {
        let kt = r.k.rescaled();
        let fields = [r.k.kx, r.k.ky, r.k.kz, r.omega, r.n[0], r.n[1], r.n[2], r.lambda, kt[0], kt[1], kt[2]];
        let line: Vec<String> = fields.iter().map(|&v| fmt_f64(v)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_two_contains_origin() {
        let rows = dispersion_grid(2, Chirality::Plus);
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().any(|r| r.k.norm() == 0.0 && r.omega == 0.0));
        assert!(rows.iter().all(|r| r.k.in_zone()));
    }

    #[test]
    fn csv_roundtrips_floats() {
        let rows = dispersion_grid(4, Chirality::Minus);
        let mut buf = Vec::new();
        write_dispersion_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("kx,ky,kz,omega,nx,ny,nz,lambda"));
        for (line, row) in lines.zip(&rows) {
            let omega: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
            assert_eq!(omega, row.omega);
        }
    }
}
