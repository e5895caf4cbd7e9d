//! Run configuration: defaults, overridden by a `key=value` file, overridden by flags.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Single,
    Bath,
    FreeSpace,
    OracleCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Single => "single",
            Command::Bath => "bath",
            Command::FreeSpace => "freespace",
            Command::OracleCheck => "oracle-check",
        }
    }
}

/// A scalar given on the command line, kept with its spelling (`pi/2`, `0.5`).
#[derive(Debug, Clone, PartialEq)]
pub struct Scalar {
    pub token: String,
    pub value: f64,
}

/// Parses a number or a multiple of π: `pi`, `-pi`, `2pi`, `2*pi`, `pi/2`, `3*pi/4`, `0.25`.
pub fn parse_scalar(token: &str) -> Result<Scalar> {
    let t = token.trim();
    let bad = || Error::InvalidParameter(format!("cannot parse {token:?} as a number or multiple of pi"));
    let value = if let Some(pos) = t.find("pi") {
        let (coef, rest) = (t[..pos].trim_end_matches('*').trim(), &t[pos + 2..]);
        let coef = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad())?,
        };
        let denom = match rest.trim() {
            "" => 1.0,
            r => r.strip_prefix('/').ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad())?,
        };
        if denom == 0.0 {
            return Err(bad());
        }
        coef * PI / denom
    } else {
        t.parse::<f64>().map_err(|_| bad())?
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(Scalar { token: t.to_string(), value })
}

pub fn parse_scalar_list(text: &str) -> Result<Vec<Scalar>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(parse_scalar).collect()
}

/// Reads a flat `key = value` file. Blank lines and `#` comments are ignored.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("config line {}: expected key=value", i + 1)))?;
        let key = k.trim().trim_start_matches("--").to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(Error::InvalidParameter(format!("config line {}: unknown key {key:?}", i + 1)));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

pub const KNOWN_KEYS: &[&str] = &[
    "model",
    "gamma",
    "rho0",
    "cutoff",
    "tau",
    "delta-tau",
    "v",
    "n-min",
    "n-max",
    "out",
    "tol-abs",
    "tol-rel",
    "tol-max-panels",
    "tol-oracle",
    "tol-norm",
    "dt",
    "modes",
    "coupling",
    "checks",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BathKind {
    Lorentzian,
    Exponential,
}

pub const ALL_CHECKS: &[&str] = &["two-level-bare", "two-level-ratio", "continuum-bare", "continuum-pulsed"];

/// Fully resolved configuration for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub model: BathKind,
    pub gamma: Scalar,
    pub rho0: Scalar,
    pub cutoff: Scalar,
    /// Explicit τ values; empty means the command's own default.
    pub tau: Vec<Scalar>,
    pub delta_tau: Vec<Scalar>,
    pub v: Scalar,
    pub n_min: u64,
    pub n_max: u64,
    pub out: String,
    pub tol_abs: f64,
    pub tol_rel: f64,
    pub tol_max_panels: usize,
    pub tol_oracle: f64,
    pub tol_norm: f64,
    pub dt: Option<Scalar>,
    pub modes: usize,
    pub coupling: f64,
    pub checks: Vec<String>,
}

fn default_settings(command: Command) -> BTreeMap<String, String> {
    let n_range = match command {
        Command::Single => ("1", "20"),
        _ => ("1", "50"),
    };
    let tau = match command {
        Command::Single => "1",
        Command::FreeSpace => "1,pi",
        Command::Bath | Command::OracleCheck => "",
    };
    let defaults = [
        ("model", "exponential"),
        ("gamma", "1"),
        ("rho0", "1"),
        ("cutoff", "1"),
        ("tau", tau),
        ("delta-tau", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0,1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9,2.0,2.1,2.2,2.3,2.4,2.5,2.6,2.7,2.8,2.9,3.0"),
        ("v", "0.001"),
        ("n-min", n_range.0),
        ("n-max", n_range.1),
        ("out", "-"),
        ("tol-abs", "1e-9"),
        ("tol-rel", "1e-8"),
        ("tol-max-panels", "1000000"),
        ("tol-oracle", "0.01"),
        ("tol-norm", "1e-8"),
        ("dt", ""),
        ("modes", "2000"),
        ("coupling", "0.004"),
        ("checks", "two-level-bare,two-level-ratio,continuum-bare,continuum-pulsed"),
    ];
    defaults.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// Layers `file` then `flags` over the defaults and validates the result.
pub fn resolve(
    command: Command,
    file: &BTreeMap<String, String>,
    flags: &BTreeMap<String, String>,
) -> Result<(RunConfig, BTreeMap<String, String>)> {
    let mut s = default_settings(command);
    for (k, v) in file.iter().chain(flags) {
        s.insert(k.clone(), v.clone());
    }
    let get = |k: &str| s.get(k).map(String::as_str).unwrap_or("");
    let positive = |k: &str| -> Result<Scalar> {
        let x = parse_scalar(get(k))?;
        if x.value > 0.0 {
            Ok(x)
        } else {
            Err(Error::InvalidParameter(format!("{k} must be positive, got {}", x.token)))
        }
    };
    let pos_f64 = |k: &str| positive(k).map(|x| x.value);
    let count = |k: &str| -> Result<u64> {
        get(k).trim().parse::<u64>().map_err(|_| Error::InvalidParameter(format!("{k} must be a non-negative integer")))
    };

    let model = match get("model") {
        "exponential" => BathKind::Exponential,
        "lorentzian" => BathKind::Lorentzian,
        other => return Err(Error::InvalidParameter(format!("unknown model {other:?}; expected exponential or lorentzian"))),
    };
    let tau = parse_scalar_list(get("tau"))?;
    if let Some(t) = tau.iter().find(|t| t.value <= 0.0) {
        return Err(Error::InvalidParameter(format!("tau must be positive, got {}", t.token)));
    }
    let delta_tau = parse_scalar_list(get("delta-tau"))?;
    let n_min = count("n-min")?;
    let n_max = count("n-max")?;
    if n_min < 1 {
        return Err(Error::InvalidParameter("n-min must be at least 1".into()));
    }
    if n_max < n_min {
        return Err(Error::InvalidParameter(format!("n-max ({n_max}) is below n-min ({n_min})")));
    }
    let dt = match get("dt").trim() {
        "" => None,
        _ => Some(positive("dt")?),
    };
    let modes = count("modes")? as usize;
    if modes < 2 {
        return Err(Error::InvalidParameter("modes must be at least 2".into()));
    }
    let checks: Vec<String> = get("checks").split(',').map(str::trim).filter(|c| !c.is_empty()).map(String::from).collect();
    if let Some(c) = checks.iter().find(|c| !ALL_CHECKS.contains(&c.as_str())) {
        return Err(Error::InvalidParameter(format!("unknown check {c:?}")));
    }
    let v = parse_scalar(get("v"))?;
    if v.value < 0.0 {
        return Err(Error::InvalidParameter("v must be non-negative".into()));
    }
    let tol_max_panels = count("tol-max-panels")? as usize;
    if tol_max_panels == 0 {
        return Err(Error::InvalidParameter("tol-max-panels must be positive".into()));
    }

    let cfg = RunConfig {
        command,
        model,
        gamma: positive("gamma")?,
        rho0: positive("rho0")?,
        cutoff: positive("cutoff")?,
        tau,
        delta_tau,
        v,
        n_min,
        n_max,
        out: get("out").to_string(),
        tol_abs: pos_f64("tol-abs")?,
        tol_rel: pos_f64("tol-rel")?,
        tol_max_panels,
        tol_oracle: pos_f64("tol-oracle")?,
        tol_norm: pos_f64("tol-norm")?,
        dt,
        modes,
        coupling: pos_f64("coupling")?,
        checks,
    };
    Ok((cfg, s))
}
