use rayon::prelude::*;

use super::config::{BathKind, RunConfig, Scalar};
use crate::analytic;
use crate::continuum;
use crate::error::{Error, Result};
use crate::model::{BathModel, PulseSchedule, TwoLevelDrive};
use crate::oracle;
use crate::quadrature::QuadratureSpec;
use crate::sweep::{ratio, SweepResult};

fn quad_spec(cfg: &RunConfig) -> QuadratureSpec<f64> {
    QuadratureSpec {
        abs_tol: cfg.tol_abs,
        rel_tol: cfg.tol_rel,
        max_panels: cfg.tol_max_panels,
        ..QuadratureSpec::default()
    }
}

fn n_values(cfg: &RunConfig) -> Vec<u64> {
    (cfg.n_min..=cfg.n_max).collect()
}

fn bath_model(cfg: &RunConfig) -> Result<BathModel<f64>> {
    match cfg.model {
        BathKind::Exponential => BathModel::exponential(cfg.rho0.value, cfg.gamma.value),
        BathKind::Lorentzian => BathModel::lorentzian(cfg.rho0.value, cfg.gamma.value),
    }
}

/// Two-level sweep over δτ and N of the bare and pulsed probabilities.
pub fn cmd_single(cfg: &RunConfig) -> Result<SweepResult> {
    let tau = cfg.tau.first().map(|t| t.value).unwrap_or(1.0);
    let grid: Vec<(f64, u64)> = cfg
        .delta_tau
        .iter()
        .flat_map(|dt| n_values(cfg).into_iter().map(move |n| (dt.value, n)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(delta_tau, n)| -> Result<Vec<f64>> {
            let drive = TwoLevelDrive::real(cfg.v.value, delta_tau / tau);
            let sched = PulseSchedule::new(tau, n)?;
            let p_bare = analytic::p_bare(&drive, sched.total_time());
            let p_pulsed = analytic::p_pulsed(&drive, &sched);
            let prediction = match analytic::suppression_factor(delta_tau, 1.0) {
                Ok(x) => x,
                Err(Error::PoleAtOddPi { .. }) => f64::INFINITY,
                Err(e) => return Err(e),
            };
            Ok(vec![delta_tau, n as f64, p_bare, p_pulsed, ratio(p_pulsed, p_bare), prediction])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut result = SweepResult::new(["delta_tau", "N", "p_bare", "p_pulsed", "ratio", "tan2_prediction"]);
    result.rows = rows;
    Ok(result)
}

/// Structured-bath sweep over N, probabilities in units of A/Γ.
pub fn cmd_bath(cfg: &RunConfig) -> Result<SweepResult> {
    let model = bath_model(cfg)?;
    let gamma = cfg.gamma.value;
    let tau = cfg.tau.first().map(|t| t.value).unwrap_or(1.0 / (2.0 * gamma));
    let unit = continuum::einstein_a(&model)? / gamma;
    let quad = quad_spec(cfg);
    let rows = n_values(cfg)
        .par_iter()
        .map(|&n| -> Result<Vec<f64>> {
            let sched = PulseSchedule::new(tau, n)?;
            let pulsed = continuum::p_emission_pulsed(&model, &sched, &quad)?;
            let bare = continuum::p_emission_bare(&model, &sched, &quad)?;
            Ok(vec![n as f64, pulsed / unit, bare / unit])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut result = SweepResult::new(["N", "p_pulsed_over_A_per_Gamma", "p_bare_over_A_per_Gamma"])
        .with_metadata("resolved.tau", format!("{tau:.17e}"))
        .with_metadata("resolved.normalization", format!("{unit:.17e}"));
    result.rows = rows;
    Ok(result)
}

/// Free-space sweeps over N, one table per τ (ω_eg = 1).
pub fn cmd_freespace(cfg: &RunConfig) -> Result<Vec<(Scalar, SweepResult)>> {
    let quad = quad_spec(cfg);
    let cutoff = cfg.cutoff.value;
    let taus = if cfg.tau.is_empty() {
        super::config::parse_scalar_list("1,pi")?
    } else {
        cfg.tau.clone()
    };
    taus.into_iter()
        .map(|tau| {
            let rows = n_values(cfg)
                .par_iter()
                .map(|&n| -> Result<Vec<f64>> {
                    let i = continuum::free_space_I(tau.value, n, cutoff, &quad)?;
                    let i0 = continuum::free_space_I0(tau.value, n, cutoff, &quad)?;
                    Ok(vec![n as f64, i, i0])
                })
                .collect::<Result<Vec<_>>>()?;
            let mut result = SweepResult::new(["N", "I", "I0"]).with_metadata("resolved.tau", tau.token.clone());
            result.rows = rows;
            Ok((tau, result))
        })
        .collect()
}

/// One row of the cross-validation report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub observed: f64,
    pub reference: f64,
    pub rel_error: f64,
    pub tolerance: f64,
    pub norm_drift: f64,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn failed(name: &str, tolerance: f64, err: &Error) -> Self {
        CheckOutcome {
            name: name.to_string(),
            observed: f64::NAN,
            reference: f64::NAN,
            rel_error: f64::NAN,
            tolerance,
            norm_drift: f64::NAN,
            passed: false,
            detail: err.to_string(),
        }
    }
}

// Fixed scenarios: two-level δ = 1, τ = 0.2, N = 10; continuum Γτ = 0.5, N = 20.
const TWO_LEVEL: (f64, f64, u64) = (1.0, 0.2, 10);
const CONTINUUM: (f64, u64) = (0.5, 20);

fn two_level_dt(drive: &TwoLevelDrive<f64>, tau: f64) -> f64 {
    let fastest = drive.v.norm().max(drive.delta.abs()).max(1e-300);
    (tau / 1000.0).min(oracle::MAX_PHASE_PER_STEP / fastest)
}

fn continuum_dt(modes: &oracle::DiscretizedContinuum<f64>, tau: f64) -> f64 {
    let fastest = modes.max_detuning().max(1e-300);
    0.999 * (tau / oracle::MIN_STEPS_PER_INTERVAL as f64).min(oracle::MAX_PHASE_PER_STEP / fastest)
}

fn compare(name: &str, observed: f64, reference: f64, tol: f64, drift: f64, tol_norm: f64) -> CheckOutcome {
    let rel_error = (observed - reference).abs() / reference.abs();
    let mut detail = String::new();
    let mut passed = rel_error <= tol;
    if drift > tol_norm {
        passed = false;
        detail = format!("norm drift {drift:.3e} above {tol_norm:.1e}");
    }
    CheckOutcome {
        name: name.to_string(),
        observed,
        reference,
        rel_error,
        tolerance: tol,
        norm_drift: drift,
        passed,
        detail,
    }
}

fn two_level_check(cfg: &RunConfig, name: &str) -> Result<CheckOutcome> {
    let (delta, tau, n) = TWO_LEVEL;
    let drive = TwoLevelDrive::real(cfg.v.value, delta);
    let sched = PulseSchedule::new(tau, n)?;
    let dt = cfg.dt.as_ref().map(|d| d.value).unwrap_or_else(|| two_level_dt(&drive, tau));
    let bare = oracle::evolve_two_level(&drive, &sched, false, dt)?;
    let drift_bare = (bare.norm() - 1.0).abs();
    if name == "two-level-bare" {
        let tol = cfg.tol_oracle.min(1e-3);
        let reference = analytic::p_bare(&drive, sched.total_time());
        return Ok(compare(name, bare.excited_population(), reference, tol, drift_bare, cfg.tol_norm));
    }
    let kicked = oracle::evolve_two_level(&drive, &sched, true, dt)?;
    let drift = drift_bare.max((kicked.norm() - 1.0).abs());
    let observed = kicked.excited_population() / bare.excited_population();
    let reference = analytic::suppression_factor(delta, tau)?;
    Ok(compare(name, observed, reference, cfg.tol_oracle, drift, cfg.tol_norm))
}

fn continuum_check(cfg: &RunConfig, name: &str) -> Result<CheckOutcome> {
    let (tau, n) = CONTINUUM;
    let model = BathModel::exponential(cfg.rho0.value, cfg.gamma.value)?;
    let tau = tau / cfg.gamma.value;
    let sched = PulseSchedule::new(tau, n)?;
    let support = continuum::support(&model, continuum::Envelope::Density);
    let modes = oracle::discretize(&model, cfg.modes, support)?;
    let dt = cfg.dt.as_ref().map(|d| d.value).unwrap_or_else(|| continuum_dt(&modes, tau));
    let quad = quad_spec(cfg);
    let s2 = cfg.coupling * cfg.coupling;
    let pulsed = name == "continuum-pulsed";
    let state = oracle::evolve_continuum(&modes, &sched, pulsed, dt, cfg.coupling)?;
    let observed = state.lower_population() / s2;
    let drift = (state.norm() - 1.0).abs();
    let reference = if pulsed {
        continuum::p_emission_pulsed(&model, &sched, &quad)?
    } else {
        continuum::p_emission_bare(&model, &sched, &quad)?
    };
    let mut outcome = compare(name, observed, reference, cfg.tol_oracle, drift, cfg.tol_norm);
    if pulsed {
        let bare = continuum::p_emission_bare(&model, &sched, &quad)?;
        if observed.partial_cmp(&bare) != Some(std::cmp::Ordering::Less) {
            outcome.passed = false;
            outcome.detail = format!("pulsed emission {observed:.6e} not below bare {bare:.6e}");
        }
    }
    Ok(outcome)
}

/// Runs the configured oracle cross-checks; failures become failing rows.
pub fn cmd_oracle_check(cfg: &RunConfig) -> Vec<CheckOutcome> {
    cfg.checks
        .par_iter()
        .map(|name| {
            let r = if name.starts_with("two-level") {
                two_level_check(cfg, name)
            } else {
                continuum_check(cfg, name)
            };
            r.unwrap_or_else(|e| CheckOutcome::failed(name, cfg.tol_oracle, &e))
        })
        .collect()
}

pub fn format_report(outcomes: &[CheckOutcome], metadata: &std::collections::BTreeMap<String, String>) -> String {
    use crate::sweep::format_value;
    let mut out = String::new();
    for (k, v) in metadata {
        out.push_str(&format!("# {k}={v}\n"));
    }
    out.push_str("check,observed,reference,rel_error,tolerance,norm_drift,status,detail\n");
    for o in outcomes {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            o.name,
            format_value(o.observed),
            format_value(o.reference),
            format_value(o.rel_error),
            format_value(o.tolerance),
            format_value(o.norm_drift),
            if o.passed { "pass" } else { "fail" },
            o.detail.replace(',', ";"),
        ));
    }
    out
}
