//! Run configuration: defaults, then the TOML file, then flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use weylwalk::hopf::ModelKind;
use weylwalk::lorentz::{DeformationConfig, GChoice};
use weylwalk::walk::SQRT3;
use weylwalk::{Chirality, WaveVector};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GName {
    Unit,
    Secant,
}

impl FromStr for GName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "unit" => Ok(GName::Unit),
            "secant" => Ok(GName::Secant),
            _ => Err(format!("unknown g {s:?} (expected unit or secant)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkParams {
    pub grid: usize,
    pub chirality: Chirality,
    pub steps: u64,
    /// Packet center in grid units; `None` means the middle of the grid.
    pub center: Option<[f64; 3]>,
    pub width: f64,
    pub k_center: [f64; 3],
    pub dump: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LorentzParams {
    /// Fixed rapidity for every point; random within `beta_max` otherwise.
    pub beta: Option<[f64; 3]>,
    pub theta: [f64; 3],
    pub beta_max: f64,
    pub g: GName,
    pub safe_radius: f64,
    pub points: usize,
    pub regions: Vec<usize>,
    pub swap: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HopfParams {
    pub model: ModelKind,
    pub trials: u64,
    pub kappa_list: Vec<f64>,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub out: Option<PathBuf>,
    /// Unset means the subcommand's own default.
    pub format: Option<Format>,
    pub seed: u64,
    pub walk: WalkParams,
    pub lorentz: LorentzParams,
    pub hopf: HopfParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            out: None,
            format: None,
            seed: 0,
            walk: WalkParams {
                grid: 32,
                chirality: Chirality::Plus,
                steps: 20,
                center: None,
                width: 4.0,
                k_center: [1.5, 0.5, 0.3],
                dump: None,
            },
            lorentz: LorentzParams {
                beta: None,
                theta: [0.0; 3],
                beta_max: 0.5,
                g: GName::Secant,
                safe_radius: SQRT3 * std::f64::consts::PI / 5.0,
                points: 200,
                regions: vec![0, 1, 2, 3],
                swap: false,
            },
            hopf: HopfParams { model: ModelKind::Classical, trials: 100, kappa_list: vec![1e3, 1e6], samples: 20 },
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    out: Option<PathBuf>,
    format: Option<Format>,
    seed: Option<u64>,
    #[serde(default)]
    walk: FileWalk,
    #[serde(default)]
    lorentz: FileLorentz,
    #[serde(default)]
    hopf: FileHopf,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileWalk {
    grid: Option<usize>,
    chirality: Option<Chirality>,
    steps: Option<u64>,
    center: Option<[f64; 3]>,
    width: Option<f64>,
    k_center: Option<[f64; 3]>,
    dump: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileLorentz {
    beta: Option<[f64; 3]>,
    theta: Option<[f64; 3]>,
    beta_max: Option<f64>,
    g: Option<GName>,
    safe_radius: Option<f64>,
    points: Option<usize>,
    regions: Option<Vec<usize>>,
    swap: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileHopf {
    model: Option<ModelKind>,
    trials: Option<u64>,
    kappa_list: Option<Vec<f64>>,
    samples: Option<usize>,
}

/// Values given on the command line; `None` leaves the lower layers alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub chirality: Option<Chirality>,
    pub grid: Option<usize>,
    pub steps: Option<u64>,
    pub dump: Option<PathBuf>,
    pub beta: Option<[f64; 3]>,
    pub theta: Option<[f64; 3]>,
    pub g: Option<GName>,
    pub points: Option<usize>,
    pub swap: bool,
    pub model: Option<ModelKind>,
    pub trials: Option<u64>,
    pub kappa_list: Option<Vec<f64>>,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

impl RunConfig {
    pub fn load(file: Option<&Path>, flags: Overrides) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            cfg.apply_file(&text)?;
        }
        cfg.apply_flags(flags);
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        let f: FileConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        self.out = f.out.or(self.out.take());
        self.format = f.format.or(self.format);
        set(&mut self.seed, f.seed);
        let w = &mut self.walk;
        set(&mut w.grid, f.walk.grid);
        set(&mut w.chirality, f.walk.chirality);
        set(&mut w.steps, f.walk.steps);
        w.center = f.walk.center.or(w.center);
        set(&mut w.width, f.walk.width);
        set(&mut w.k_center, f.walk.k_center);
        w.dump = f.walk.dump.or(w.dump.take());
        let l = &mut self.lorentz;
        l.beta = f.lorentz.beta.or(l.beta);
        set(&mut l.theta, f.lorentz.theta);
        set(&mut l.beta_max, f.lorentz.beta_max);
        set(&mut l.g, f.lorentz.g);
        set(&mut l.safe_radius, f.lorentz.safe_radius);
        set(&mut l.points, f.lorentz.points);
        set(&mut l.regions, f.lorentz.regions);
        set(&mut l.swap, f.lorentz.swap);
        let h = &mut self.hopf;
        set(&mut h.model, f.hopf.model);
        set(&mut h.trials, f.hopf.trials);
        set(&mut h.kappa_list, f.hopf.kappa_list);
        set(&mut h.samples, f.hopf.samples);
        Ok(())
    }

    fn apply_flags(&mut self, o: Overrides) {
        self.out = o.out.or(self.out.take());
        self.format = o.format.or(self.format);
        set(&mut self.seed, o.seed);
        set(&mut self.walk.chirality, o.chirality);
        set(&mut self.walk.grid, o.grid);
        set(&mut self.walk.steps, o.steps);
        self.walk.dump = o.dump.or(self.walk.dump.take());
        self.lorentz.beta = o.beta.or(self.lorentz.beta);
        set(&mut self.lorentz.theta, o.theta);
        set(&mut self.lorentz.g, o.g);
        set(&mut self.lorentz.points, o.points);
        self.lorentz.swap |= o.swap;
        set(&mut self.hopf.model, o.model);
        set(&mut self.hopf.trials, o.trials);
        set(&mut self.hopf.kappa_list, o.kappa_list);
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        let w = &self.walk;
        if w.grid < 2 {
            return bad(format!("grid must be at least 2, got {}", w.grid));
        }
        if !(w.width > 0.0 && w.width.is_finite()) {
            return bad(format!("packet width must be positive, got {}", w.width));
        }
        if w.center.is_some_and(|c| c.iter().any(|v| !v.is_finite())) || w.k_center.iter().any(|v| !v.is_finite()) {
            return bad("packet center and momentum must be finite".into());
        }
        let l = &self.lorentz;
        let all_finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if !all_finite(&l.theta) || l.beta.is_some_and(|b| !all_finite(&b)) {
            return bad("beta and theta must be finite".into());
        }
        if l.beta_max.is_nan() || l.beta_max < 0.0 || l.beta_max.is_infinite() {
            return bad(format!("beta_max must be non-negative, got {}", l.beta_max));
        }
        if l.safe_radius.is_nan() || l.safe_radius <= 0.0 {
            return bad(format!("safe_radius must be positive, got {}", l.safe_radius));
        }
        if l.regions.is_empty() || l.regions.iter().any(|&r| r > 3) {
            return bad(format!("regions must be a non-empty subset of 0..=3, got {:?}", l.regions));
        }
        let h = &self.hopf;
        if h.kappa_list.is_empty() || h.kappa_list.iter().any(|k| !(k.is_finite() && *k > 0.0)) {
            return bad(format!("kappa list must hold positive numbers, got {:?}", h.kappa_list));
        }
        if h.samples == 0 {
            return bad("samples must be positive".into());
        }
        Ok(())
    }

    pub fn deformation(&self) -> DeformationConfig {
        let g = match self.lorentz.g {
            GName::Unit => GChoice::UnitG,
            GName::Secant => GChoice::SecantG,
        };
        DeformationConfig::new(g).with_safe_radius(self.lorentz.safe_radius)
    }

    pub fn packet_center(&self) -> [f64; 3] {
        self.walk.center.unwrap_or([self.walk.grid as f64 / 2.0; 3])
    }

    pub fn packet_momentum(&self) -> WaveVector {
        WaveVector::from_array(self.walk.k_center)
    }
}

/// `"a,b,c"` into three floats.
pub fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let v = parse_list(s)?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected three comma-separated numbers, got {}", v.len()))
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let mut cfg = RunConfig::default();
        cfg.apply_file("seed = 5\n[walk]\ngrid = 8\nsteps = 3\n").unwrap();
        cfg.apply_flags(Overrides { grid: Some(4), ..Overrides::default() });
        assert_eq!(cfg.seed, 5);
        assert_eq!(cfg.walk.grid, 4);
        assert_eq!(cfg.walk.steps, 3);
        assert_eq!(cfg.walk.chirality, Chirality::Plus);
    }

    #[test]
    fn unknown_keys_rejected() {
        let mut cfg = RunConfig::default();
        assert!(matches!(cfg.apply_file("sed = 5\n"), Err(CliError::Config(_))));
        assert!(cfg.apply_file("[walk]\ngird = 5\n").is_err());
        assert!(cfg.apply_file("[hopf]\nmodel = \"poincare\"\n").is_err());
    }

    #[test]
    fn validation() {
        let mut cfg = RunConfig::default();
        cfg.walk.grid = 1;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::default();
        cfg.hopf.kappa_list = vec![-1.0];
        assert!(cfg.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn triples() {
        assert_eq!(parse_triple("0.1, 0,-2").unwrap(), [0.1, 0.0, -2.0]);
        assert!(parse_triple("1,2").is_err());
        assert!(parse_triple("1,x,2").is_err());
    }
}
