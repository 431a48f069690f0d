//! The four subcommands. Each writes its data, then returns the list of
//! failed assertions (empty on success).

use std::fs::File;
use std::io::{self, BufWriter, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use weylwalk::hopf::basis::{compare_with_taylor, walk_basis_inverse, walk_n_taylor};
use weylwalk::hopf::duality::all_zero;
use weylwalk::hopf::export::{table_json, TableJson};
use weylwalk::hopf::fuzz::FuzzReport;
use weylwalk::hopf::reference::{self, EntryCheck, TextualComparison};
use weylwalk::hopf::{
    basis_independence_fuzz, kappa_classical_limit, lie_checks, walk_basis_map, BasisMap, CoproductModel, Duality,
    KappaLimitReport, LieReport, ModelKind,
};
use weylwalk::lorentz::{
    check_symmetry, check_symmetry_swapped, sample_beta, sample_on_shell_point, write_boost_scan_csv, BoostScanRow,
    LorentzError,
};
use weylwalk::walk::{
    dispersion_grid, group_velocity, unwrap_position, write_dispersion_csv, DispersionRow, PacketSpec, SQRT3,
};
use weylwalk::{Chirality, LatticeState};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub type Failures = Vec<String>;

const SHELL_TOL: f64 = 1e-12;
const NORM_TOL: f64 = 1e-10;
const COVARIANCE_TOL: f64 = 1e-8;

fn output(cfg: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &cfg.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(cfg: &RunConfig, value: &T) -> Result<(), CliError> {
    let mut w = output(cfg)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// 17 significant digits.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct DispersionJson {
    kx: f64,
    ky: f64,
    kz: f64,
    omega: f64,
    nx: f64,
    ny: f64,
    nz: f64,
    lambda: f64,
    kx_rescaled: f64,
    ky_rescaled: f64,
    kz_rescaled: f64,
}

impl From<&DispersionRow> for DispersionJson {
    fn from(r: &DispersionRow) -> Self {
        let kt = r.k.rescaled();
        DispersionJson {
            kx: r.k.kx,
            ky: r.k.ky,
            kz: r.k.kz,
            omega: r.omega,
            nx: r.n[0],
            ny: r.n[1],
            nz: r.n[2],
            lambda: r.lambda,
            kx_rescaled: kt[0],
            ky_rescaled: kt[1],
            kz_rescaled: kt[2],
        }
    }
}

pub fn dispersion(cfg: &RunConfig) -> Result<Failures, CliError> {
    let rows = dispersion_grid(cfg.walk.grid, cfg.walk.chirality);
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = output(cfg)?;
            write_dispersion_csv(&rows, &mut w)?;
            w.flush()?;
        }
        Format::Json => write_json(cfg, &rows.iter().map(DispersionJson::from).collect::<Vec<_>>())?,
    }
    let mut failures = Vec::new();
    for r in &rows {
        let n2: f64 = r.n.iter().map(|v| v * v).sum();
        let gap = (r.omega.sin().powi(2) - n2).abs();
        if gap > SHELL_TOL {
            failures.push(format!("walk-dispersion: sin²ω − |n|² = {gap:e} at k = {:?}", r.k.to_array()));
        }
    }
    Ok(failures)
}

#[derive(Serialize)]
struct EvolveRow {
    step: u64,
    centroid: [f64; 3],
    spread: f64,
    norm: f64,
}

#[derive(Serialize)]
struct EvolveJson {
    grid: usize,
    chirality: Chirality,
    center: [f64; 3],
    width: f64,
    k_center: [f64; 3],
    /// `√3 ∇ω`, the expected centroid drift per step in grid units.
    group_velocity: [f64; 3],
    rows: Vec<EvolveRow>,
}

pub fn evolve(cfg: &RunConfig) -> Result<Failures, CliError> {
    let w = &cfg.walk;
    let n = w.grid;
    let spec = PacketSpec { center: cfg.packet_center(), width: w.width, k_center: cfg.packet_momentum() };
    let mut psi = LatticeState::gaussian_packet(n, &spec, w.chirality)?;
    let mut rows = Vec::with_capacity(w.steps as usize + 1);
    let mut pos = psi.centroid();
    for step in 0..=w.steps {
        if step > 0 {
            psi = psi.step(w.chirality, 1)?;
            let c = psi.centroid();
            pos = [0, 1, 2].map(|a| unwrap_position(pos[a], c[a], n));
        }
        rows.push(EvolveRow { step, centroid: pos, spread: psi.spread(), norm: psi.norm_sqr().sqrt() });
    }
    if let Some(path) = &w.dump {
        let mut f = BufWriter::new(File::create(path)?);
        psi.write_wqw1(w.chirality, &mut f)?;
        f.flush()?;
    }
    let failures = rows
        .iter()
        .filter(|r| (r.norm - 1.0).abs() > NORM_TOL)
        .map(|r| format!("walk-unitarity: norm {} at step {}", fmt_f64(r.norm), r.step))
        .collect();
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = output(cfg)?;
            writeln!(out, "step,cx,cy,cz,spread,norm")?;
            for r in &rows {
                let vals = [r.centroid[0], r.centroid[1], r.centroid[2], r.spread, r.norm].map(fmt_f64);
                writeln!(out, "{},{}", r.step, vals.join(","))?;
            }
            out.flush()?;
        }
        Format::Json => {
            let v = group_velocity(spec.k_center, w.chirality).map(|g| g * SQRT3);
            let doc = EvolveJson {
                grid: n,
                chirality: w.chirality,
                center: spec.center,
                width: w.width,
                k_center: w.k_center,
                group_velocity: v,
                rows,
            };
            write_json(cfg, &doc)?;
        }
    }
    Ok(failures)
}

#[derive(Serialize)]
struct BoostSummary {
    points: usize,
    regions: Vec<usize>,
    swapped: bool,
    rejected: usize,
    max_residual: f64,
    mean_residual: f64,
    tolerance: f64,
}

#[derive(Serialize)]
struct BoostRowJson {
    region: usize,
    beta: [f64; 3],
    omega_in: f64,
    k_in: [f64; 3],
    omega_out: f64,
    k_out: [f64; 3],
    residual: f64,
}

#[derive(Serialize)]
struct BoostJson {
    summary: BoostSummary,
    rows: Vec<BoostRowJson>,
}

pub fn boost_check(cfg: &RunConfig) -> Result<Failures, CliError> {
    let l = &cfg.lorentz;
    let def = cfg.deformation();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = Vec::with_capacity(l.points);
    let mut rejected = 0;
    let max_attempts = 100 * l.points.max(1);
    while rows.len() < l.points {
        if rows.len() + rejected >= max_attempts {
            return Err(CliError::Numerical(format!(
                "{rejected} of {} sampled boosts left the safe region",
                rows.len() + rejected
            )));
        }
        let region = l.regions[rows.len() % l.regions.len()];
        let pt = sample_on_shell_point(&mut rng, region, cfg.walk.chirality, &def, 0.5)?;
        let beta = l.beta.unwrap_or_else(|| sample_beta(&mut rng, l.beta_max));
        let check = if l.swap { check_symmetry_swapped } else { check_symmetry };
        match check(&pt, beta, l.theta, &def) {
            Ok(r) => rows.push(BoostScanRow { beta, input: pt, output: r.image, residual: r.residual }),
            Err(LorentzError::OutsideSafeRegion { .. } | LorentzError::OutsideImage(_)) => rejected += 1,
            Err(e @ LorentzError::NoConvergence { .. }) => {
                return Err(CliError::Numerical(format!(
                    "{e} at ω = {}, k = {:?}, β = {beta:?}",
                    pt.omega,
                    pt.k.to_array()
                )))
            }
            Err(e) => return Err(e.into()),
        }
    }
    let max = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let mean = if rows.is_empty() { 0.0 } else { rows.iter().map(|r| r.residual).sum::<f64>() / rows.len() as f64 };
    let failures: Failures = rows
        .iter()
        .filter(|r| r.residual.is_nan() || r.residual > COVARIANCE_TOL)
        .map(|r| {
            format!(
                "deformed-lorentz-covariance: residual {} at k = {:?}, β = {:?}",
                fmt_f64(r.residual),
                r.input.k.to_array(),
                r.beta
            )
        })
        .collect();
    let summary = BoostSummary {
        points: rows.len(),
        regions: l.regions.clone(),
        swapped: l.swap,
        rejected,
        max_residual: max,
        mean_residual: mean,
        tolerance: COVARIANCE_TOL,
    };
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = output(cfg)?;
            write_boost_scan_csv(&rows, &mut w)?;
            w.flush()?;
            eprintln!(
                "boost-check: {} points, {rejected} redrawn, max residual {}, mean {}",
                summary.points,
                fmt_f64(max),
                fmt_f64(mean)
            );
        }
        Format::Json => {
            let rows = rows
                .iter()
                .map(|r| BoostRowJson {
                    region: r.input.region,
                    beta: r.beta,
                    omega_in: r.input.omega,
                    k_in: r.input.k.to_array(),
                    omega_out: r.output.omega,
                    k_out: r.output.k.to_array(),
                    residual: r.residual,
                })
                .collect();
            write_json(cfg, &BoostJson { summary, rows })?;
        }
    }
    Ok(failures)
}

#[derive(Serialize)]
struct Tables {
    identity: TableJson,
    walk: TableJson,
}

#[derive(Serialize)]
struct BasisMapCheck {
    inverse_matches: bool,
    composes_to_identity: bool,
    taylor_mismatches: usize,
}

#[derive(Serialize)]
struct HopfJson {
    model: ModelKind,
    seed: u64,
    spacetime: Tables,
    phase_space: Tables,
    checks: Vec<EntryCheck>,
    textual_comparisons: Vec<TextualComparison>,
    basis_independence: FuzzReport,
    kappa_limit: KappaLimitReport,
    lie: LieReport,
    basis_map: BasisMapCheck,
}

pub fn hopf(cfg: &RunConfig) -> Result<Failures, CliError> {
    if cfg.format == Some(Format::Csv) {
        return Err(CliError::Config("hopf writes json only".into()));
    }
    let h = &cfg.hopf;
    let model = CoproductModel::new(h.model);
    let identity = BasisMap::identity();
    let walk = walk_basis_map();
    let d_id = Duality::with_default_pairing(&model, &identity)?;
    let d_walk = Duality::with_default_pairing(&model, &walk)?;
    let st_id = d_id.spacetime_commutators()?;
    let st_walk = d_walk.spacetime_commutators()?;
    let ph_id = d_id.phase_space_commutators()?;
    let ph_walk = d_walk.phase_space_commutators()?;

    let mut failures = Vec::new();
    let mut checks = Vec::new();
    let mut textual = Vec::new();
    match h.model {
        ModelKind::Classical => {
            for (name, t) in [("identity", &st_id), ("walk", &st_walk)] {
                if !all_zero(t) {
                    failures.push(format!("commutative-spacetime: {name} basis has nonzero [x, x]"));
                }
            }
            checks.extend(reference::compare(
                reference::TAG_CLASSICAL_WALK,
                &ph_walk,
                &reference::classical_walk_heisenberg(),
            ));
        }
        ModelKind::Kappa => {
            for (map, t) in [(&identity, &st_id), (&walk, &st_walk)] {
                checks.extend(reference::compare(reference::TAG_KAPPA_MINKOWSKI, t, &reference::kappa_minkowski(map)));
            }
            checks.extend(reference::compare(
                reference::TAG_KAPPA_WALK,
                &ph_walk,
                &reference::kappa_walk_heisenberg_well_formed(),
            ));
            textual = reference::textual_comparisons(&ph_walk);
        }
    }
    for c in checks.iter().filter(|c| !c.matches) {
        failures.push(format!("{}: [{}, {}] computed {} expected {}", c.tag, c.lhs, c.rhs, c.computed, c.expected));
    }

    let basis_independence = basis_independence_fuzz(&model, h.trials, cfg.seed)?;
    for t in basis_independence.trials.iter().filter(|t| !t.passed) {
        failures.push(format!(
            "basis-independence: trial {} changed the spacetime table: {}",
            t.trial,
            t.counterexample.as_deref().unwrap_or("")
        ));
    }
    let kappa_limit = kappa_classical_limit(&h.kappa_list, h.samples, cfg.seed);
    if !kappa_limit.passed() {
        failures.push("kappa-classical-limit: coproduct does not approach the primitive one as 1/kappa".into());
    }
    let lie = lie_checks();
    if !lie.passed(1e-6) {
        failures.push(format!("poincare-algebra: Jacobi failures {:?}", lie.jacobi_failures));
    }
    let basis_map = BasisMapCheck {
        inverse_matches: walk.verify_inverse(&walk_basis_inverse()).is_ok(),
        composes_to_identity: walk.composes_to_identity(),
        taylor_mismatches: compare_with_taylor(&walk, &walk_n_taylor(Chirality::Plus)).len(),
    };
    if !basis_map.inverse_matches || !basis_map.composes_to_identity || basis_map.taylor_mismatches > 0 {
        failures.push("walk-basis-map: inverse or Taylor expansion disagrees".into());
    }

    let doc = HopfJson {
        model: h.model,
        seed: cfg.seed,
        spacetime: Tables { identity: table_json(&st_id), walk: table_json(&st_walk) },
        phase_space: Tables { identity: table_json(&ph_id), walk: table_json(&ph_walk) },
        checks,
        textual_comparisons: textual,
        basis_independence,
        kappa_limit,
        lie,
        basis_map,
    };
    write_json(cfg, &doc)?;
    Ok(failures)
}
