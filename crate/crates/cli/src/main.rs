mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use weylwalk::hopf::ModelKind;
use weylwalk::Chirality;

use config::{parse_triple, Format, GName, Overrides, RunConfig};
use error::CliError;

/// Weyl quantum walk, deformed Lorentz checks and Hopf-algebra commutators.
///
/// Exit codes: 0 all checks pass, 2 a check failed, 3 a numerical solve
/// failed, 4 bad configuration.
#[derive(Parser, Debug)]
#[command(name = "weylwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML config file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (stdout if omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    chirality: Option<Chirality>,
    /// Grid side for evolve, samples per axis for dispersion.
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long, global = true)]
    steps: Option<u64>,
    /// Write the final state of evolve in the WQW1 format.
    #[arg(long, global = true)]
    dump: Option<PathBuf>,
    /// Fixed rapidity bx,by,bz (random per point if omitted).
    #[arg(long, global = true, value_parser = parse_triple, allow_hyphen_values = true)]
    beta: Option<[f64; 3]>,
    /// Rotation angles tx,ty,tz.
    #[arg(long, global = true, value_parser = parse_triple, allow_hyphen_values = true)]
    theta: Option<[f64; 3]>,
    #[arg(long, global = true)]
    g: Option<GName>,
    /// Number of on-shell points in boost-check.
    #[arg(long, global = true)]
    points: Option<usize>,
    /// Exchange the two spinor representations (negative control).
    #[arg(long, global = true)]
    swap: bool,
    #[arg(long, global = true)]
    model: Option<ModelKind>,
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Numeric kappa values v1,v2,... for the classical-limit report.
    #[arg(long = "kappa-list", global = true, value_delimiter = ',')]
    kappa_list: Option<Vec<f64>>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Tabulate ω(k) over the Brillouin zone.
    Dispersion,
    /// Evolve a Gaussian packet and record centroid, spread and norm.
    Evolve,
    /// Sweep deformed boosts over random on-shell points.
    BoostCheck,
    /// Commutator tables, basis-independence fuzz and the κ → ∞ limit.
    Hopf,
}

const MAX_REPORTED: usize = 20;

fn overrides(cli: &Cli) -> Overrides {
    Overrides {
        out: cli.out.clone(),
        format: cli.format,
        seed: cli.seed,
        chirality: cli.chirality,
        grid: cli.grid,
        steps: cli.steps,
        dump: cli.dump.clone(),
        beta: cli.beta,
        theta: cli.theta,
        g: cli.g,
        points: cli.points,
        swap: cli.swap,
        model: cli.model,
        trials: cli.trials,
        kappa_list: cli.kappa_list.clone(),
    }
}

fn run(cli: &Cli) -> Result<commands::Failures, CliError> {
    let cfg = RunConfig::load(cli.config.as_deref(), overrides(cli))?;
    match cli.command {
        Command::Dispersion => commands::dispersion(&cfg),
        Command::Evolve => commands::evolve(&cfg),
        Command::BoostCheck => commands::boost_check(&cfg),
        Command::Hopf => commands::hopf(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(4),
            };
        }
    };
    match run(&cli) {
        Ok(failures) if failures.is_empty() => ExitCode::SUCCESS,
        Ok(failures) => {
            for f in failures.iter().take(MAX_REPORTED) {
                eprintln!("mismatch: {f}");
            }
            if failures.len() > MAX_REPORTED {
                eprintln!("mismatch: ... and {} more", failures.len() - MAX_REPORTED);
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
