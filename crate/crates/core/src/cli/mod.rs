//! Command-line front end for the `pulsetrain` binary.
//!
//! Exit codes: 0 success, 1 failed cross-check, 2 usage or configuration
//! error, 3 numerical failure.

pub mod commands;
pub mod config;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use config::{parse_config_text, resolve, Command, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pulsetrain", version, about = "Decay into a continuum under trains of 2π-pulses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Weakly driven two-level system: bare vs pulsed probability over δτ and N.
    Single(Flags),
    /// Structured bath (lorentzian or exponential): emission vs N in units of A/Γ.
    Bath(Flags),
    /// Free-space integrals I and I0 vs N for each τ (ω_eg = 1).
    Freespace(Flags),
    /// Cross-check the closed forms and quadratures against the time-domain oracle.
    OracleCheck(Flags),
}

/// Every flag is optional; unset flags fall back to the config file, then to defaults.
#[derive(Debug, Args, Default, Clone)]
pub struct Flags {
    /// Flat key=value file with the same keys as the long flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Bath density: exponential or lorentzian.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    #[arg(long)]
    pub rho0: Option<String>,
    /// Pulse interval(s), comma separated; accepts `pi`, `pi/2`, `2*pi`.
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
    /// δτ grid for `single`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub delta_tau: Option<String>,
    /// Coupling amplitude |v| for the two-level runs.
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_max: Option<String>,
    /// Upper frequency cutoff of the free-space integrals.
    #[arg(long, allow_hyphen_values = true)]
    pub cutoff: Option<String>,
    /// Output path, `-` for stdout.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long)]
    pub tol_abs: Option<String>,
    #[arg(long)]
    pub tol_rel: Option<String>,
    #[arg(long)]
    pub tol_max_panels: Option<String>,
    /// Relative tolerance of oracle comparisons.
    #[arg(long)]
    pub tol_oracle: Option<String>,
    /// Allowed norm drift of oracle runs.
    #[arg(long)]
    pub tol_norm: Option<String>,
    /// Oracle time step (defaults to the coarsest admissible step).
    #[arg(long)]
    pub dt: Option<String>,
    /// Number of modes of the discretized continuum.
    #[arg(long)]
    pub modes: Option<String>,
    /// Coupling scale applied to every mode of the continuum oracle.
    #[arg(long)]
    pub coupling: Option<String>,
    /// Checks to run, comma separated (empty for none).
    #[arg(long)]
    pub checks: Option<String>,
}

impl Flags {
    fn to_map(&self) -> BTreeMap<String, String> {
        let pairs = [
            ("model", &self.model),
            ("gamma", &self.gamma),
            ("rho0", &self.rho0),
            ("tau", &self.tau),
            ("delta-tau", &self.delta_tau),
            ("v", &self.v),
            ("n-min", &self.n_min),
            ("n-max", &self.n_max),
            ("cutoff", &self.cutoff),
            ("out", &self.out),
            ("tol-abs", &self.tol_abs),
            ("tol-rel", &self.tol_rel),
            ("tol-max-panels", &self.tol_max_panels),
            ("tol-oracle", &self.tol_oracle),
            ("tol-norm", &self.tol_norm),
            ("dt", &self.dt),
            ("modes", &self.modes),
            ("coupling", &self.coupling),
            ("checks", &self.checks),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone())))
            .collect()
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) | Error::Unsupported(_) => EXIT_USAGE,
        _ => EXIT_NUMERICAL,
    }
}

/// Path of the table for one τ of a multi-τ run: `fig4.csv` → `fig4_tau-pi.csv`.
pub fn tau_output_path(out: &str, token: &str) -> String {
    let label: String = token
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    let path = Path::new(out);
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_tau-{label}.{ext}"),
        None => format!("{stem}_tau-{label}"),
    };
    path.with_file_name(name).to_string_lossy().into_owned()
}

fn emit(out: &str, text: &str) -> Result<(), Failure> {
    let written = if out == "-" {
        std::io::stdout().lock().write_all(text.as_bytes())
    } else {
        let path = Path::new(out);
        match path.parent().filter(|p| !p.as_os_str().is_empty()) {
            Some(dir) => std::fs::create_dir_all(dir),
            None => Ok(()),
        }
        .and_then(|()| std::fs::write(path, text))
    };
    written.map_err(|e| Failure::Io(out.to_string(), e))
}

fn metadata(command: Command, settings: &BTreeMap<String, String>) -> BTreeMap<String, String> {
    let mut m: BTreeMap<String, String> = settings.iter().map(|(k, v)| (format!("config.{k}"), v.clone())).collect();
    m.insert("command".into(), command.name().into());
    m
}

/// Parses nothing; executes an already-parsed command line and returns the exit code.
pub fn run(cli: Cli) -> i32 {
    let (command, flags) = match cli.command {
        Sub::Single(f) => (Command::Single, f),
        Sub::Bath(f) => (Command::Bath, f),
        Sub::Freespace(f) => (Command::FreeSpace, f),
        Sub::OracleCheck(f) => (Command::OracleCheck, f),
    };
    let file = match &flags.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match parse_config_text(&text) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            },
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
        None => BTreeMap::new(),
    };
    let (cfg, settings) = match resolve(command, &file, &flags.to_map()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match execute(&cfg, &settings) {
        Ok(code) => code,
        Err(Failure::Numerics(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(out, e)) => {
            eprintln!("error: cannot write {out}: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Numerics(Error),
    /// Output target and the error raised writing it.
    Io(String, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numerics(e)
    }
}

fn execute(cfg: &RunConfig, settings: &BTreeMap<String, String>) -> Result<i32, Failure> {
    let meta = metadata(cfg.command, settings);
    let with_meta = |mut r: crate::SweepResult| {
        r.metadata.extend(meta.clone());
        r
    };
    match cfg.command {
        Command::Single => emit(&cfg.out, &with_meta(commands::cmd_single(cfg)?).to_csv())?,
        Command::Bath => emit(&cfg.out, &with_meta(commands::cmd_bath(cfg)?).to_csv())?,
        Command::FreeSpace => {
            let tables = commands::cmd_freespace(cfg)?;
            for (tau, table) in tables {
                let text = with_meta(table).to_csv();
                if cfg.out == "-" {
                    emit("-", &text)?;
                } else {
                    emit(&tau_output_path(&cfg.out, &tau.token), &text)?;
                }
            }
        }
        Command::OracleCheck => {
            let outcomes = commands::cmd_oracle_check(cfg);
            emit(&cfg.out, &commands::format_report(&outcomes, &meta))?;
            if outcomes.iter().any(|o| !o.passed) {
                return Ok(EXIT_CHECK_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}
