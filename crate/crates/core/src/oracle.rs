//! Time-domain propagation of the exact interaction-picture dynamics with
//! instantaneous kicks, used to check the closed forms and the quadratures.
//!
//! A 2π-pulse on the auxiliary transition only changes the sign of every
//! amplitude carrying the atom in |g⟩. Kicks are applied as exact sign flips at
//! t₀ + kτ, k = 1..=2N, and the fixed RK4 step divides τ so the kick instants
//! fall on step boundaries.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{BathModel, PulseSchedule, TwoLevelDrive};
use crate::scalar::Real;

/// Largest admissible dt·(fastest frequency in the equations).
pub const MAX_PHASE_PER_STEP: f64 = 1e-2;
/// Minimum number of steps per pulse interval.
pub const MIN_STEPS_PER_INTERVAL: u64 = 100;
/// Emission above which the first-order comparison is meaningless.
pub const PERTURBATIVE_LIMIT: f64 = 1e-2;

/// Uniform sampling of a continuum: mode k sits at the midpoint x_k of its cell
/// and couples with g_k = sqrt(ρ(x_k)·Δx).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedContinuum<T> {
    pub detunings: Vec<T>,
    pub couplings: Vec<T>,
    pub spacing: T,
}

impl<T: Real> DiscretizedContinuum<T> {
    pub fn len(&self) -> usize {
        self.detunings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.detunings.is_empty()
    }

    /// Σ g_k², the midpoint-rule estimate of ∫ρ dx over the support.
    pub fn total_weight(&self) -> T {
        self.couplings.iter().fold(T::zero(), |s, &g| s + g * g)
    }

    pub fn max_detuning(&self) -> T {
        self.detunings.iter().fold(T::zero(), |m, &d| m.max(d.abs()))
    }
}

pub fn discretize<T: Real>(model: &BathModel<T>, n_modes: usize, support: (T, T)) -> Result<DiscretizedContinuum<T>> {
    model.validate()?;
    let (a, b) = support;
    if !a.is_finite() || !b.is_finite() || a >= b {
        return Err(Error::Unsupported(format!("support [{a}, {b}] is not a finite interval")));
    }
    if n_modes < 2 {
        return Err(Error::InvalidParameter("at least two modes are required".into()));
    }
    let spacing = (b - a) / T::count(n_modes as u64);
    let half = T::lit(0.5);
    let detunings: Vec<T> = (0..n_modes)
        .map(|k| a + (T::count(k as u64) + half) * spacing)
        .collect();
    let couplings = detunings.iter().map(|&x| (model.weight(x) * spacing).sqrt()).collect();
    Ok(DiscretizedContinuum { detunings, couplings, spacing })
}

/// Amplitudes of the states in which the atom is in |g⟩.
#[derive(Debug, Clone, PartialEq)]
pub enum LowerSector<T> {
    /// Driven two-level system.
    Ground(Complex<T>),
    /// One photon in mode k.
    Modes(Vec<Complex<T>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KickedState<T> {
    pub excited: Complex<T>,
    pub lower: LowerSector<T>,
    pub time: T,
}

impl<T: Real> KickedState<T> {
    pub fn lower_population(&self) -> T {
        match &self.lower {
            LowerSector::Ground(c) => c.norm_sqr(),
            LowerSector::Modes(cs) => cs.iter().fold(T::zero(), |s, c| s + c.norm_sqr()),
        }
    }

    pub fn excited_population(&self) -> T {
        self.excited.norm_sqr()
    }

    pub fn norm(&self) -> T {
        self.excited_population() + self.lower_population()
    }
}

fn check_step<T: Real>(sched: &PulseSchedule<T>, dt: T, fastest: T) -> Result<u64> {
    if dt.is_nan() || dt <= T::zero() {
        return Err(Error::StepTooCoarse(format!("dt must be positive, got {dt}")));
    }
    if dt > sched.tau / T::count(MIN_STEPS_PER_INTERVAL) {
        return Err(Error::StepTooCoarse(format!(
            "dt = {dt} exceeds τ/{MIN_STEPS_PER_INTERVAL} = {}",
            sched.tau / T::count(MIN_STEPS_PER_INTERVAL)
        )));
    }
    if dt * fastest > T::lit(MAX_PHASE_PER_STEP) {
        return Err(Error::StepTooCoarse(format!(
            "dt·ω_max = {} exceeds {MAX_PHASE_PER_STEP}",
            dt * fastest
        )));
    }
    (sched.tau / dt)
        .ceil()
        .to_u64()
        .ok_or_else(|| Error::StepTooCoarse(format!("cannot divide τ = {} into steps of {dt}", sched.tau)))
}

/// Integrates ċ_e = −i v c_g e^{−iδt}, ċ_g = −i v* c_e e^{iδt} from c_g = 1.
pub fn evolve_two_level<T: Real>(
    drive: &TwoLevelDrive<T>,
    sched: &PulseSchedule<T>,
    with_kicks: bool,
    dt: T,
) -> Result<KickedState<T>> {
    let steps = check_step(sched, dt, drive.v.norm().max(drive.delta.abs()))?;
    let h = sched.tau / T::count(steps);
    let i = Complex::new(T::zero(), T::one());
    let v = drive.v;
    let delta = drive.delta;
    let rhs = |t: T, ce: Complex<T>, cg: Complex<T>| {
        let ph = Complex::from_polar(T::one(), delta * t);
        (-i * v * cg * ph.conj(), -i * v.conj() * ce * ph)
    };

    let two = T::lit(2.0);
    let six = T::lit(6.0);
    let mut ce = Complex::new(T::zero(), T::zero());
    let mut cg = Complex::new(T::one(), T::zero());
    let mut state_time = sched.t_start;
    for interval in 0..sched.kick_count() {
        let t0 = sched.t_start + T::count(interval) * sched.tau;
        for s in 0..steps {
            let t = t0 + T::count(s) * h;
            let (a1, b1) = rhs(t, ce, cg);
            let (a2, b2) = rhs(t + h / two, ce + a1 * (h / two), cg + b1 * (h / two));
            let (a3, b3) = rhs(t + h / two, ce + a2 * (h / two), cg + b2 * (h / two));
            let (a4, b4) = rhs(t + h, ce + a3 * h, cg + b3 * h);
            ce = ce + (a1 + a2 * two + a3 * two + a4) * (h / six);
            cg = cg + (b1 + b2 * two + b3 * two + b4) * (h / six);
        }
        state_time = sched.kick_time(interval + 1);
        if with_kicks {
            cg = -cg;
        }
    }
    Ok(KickedState { excited: ce, lower: LowerSector::Ground(cg), time: state_time })
}

/// Integrates the single-excitation dynamics
/// ċ_e = −i Σ g_k c_k e^{−iδ_k t}, ċ_k = −i g_k c_e e^{iδ_k t} from c_e = 1,
/// with every g_k scaled by `coupling_scale`.
pub fn evolve_continuum<T: Real>(
    modes: &DiscretizedContinuum<T>,
    sched: &PulseSchedule<T>,
    with_kicks: bool,
    dt: T,
    coupling_scale: T,
) -> Result<KickedState<T>> {
    if modes.detunings.len() != modes.couplings.len() || modes.len() < 2 {
        return Err(Error::InvalidParameter("mode table must hold at least two matching entries".into()));
    }
    let g: Vec<T> = modes.couplings.iter().map(|&g| g * coupling_scale).collect();
    let coupling_norm = g.iter().fold(T::zero(), |s, &x| s + x * x).sqrt();
    let steps = check_step(sched, dt, modes.max_detuning().max(coupling_norm))?;
    let h = sched.tau / T::count(steps);
    let half = h / T::lit(2.0);
    let two = T::lit(2.0);
    let six = T::lit(6.0);
    let n = modes.len();
    let zero = Complex::new(T::zero(), T::zero());
    let i = Complex::new(T::zero(), T::one());

    let rot_half: Vec<Complex<T>> = modes.detunings.iter().map(|&d| Complex::from_polar(T::one(), d * half)).collect();
    let mut ph0 = vec![zero; n];
    let mut ph_mid = vec![zero; n];
    let mut ph_end = vec![zero; n];

    let mut ce = Complex::new(T::one(), T::zero());
    let mut ck = vec![zero; n];
    let mut trial = vec![zero; n];
    let mut acc = vec![zero; n];
    let mut dk = vec![zero; n];

    // dck_k = −i g_k c_e ph_k; returns dce = −i Σ g_k c_k conj(ph_k)
    let deriv = |ce: Complex<T>, ck: &[Complex<T>], ph: &[Complex<T>], dk: &mut [Complex<T>]| {
        let mut sum = zero;
        for k in 0..n {
            sum = sum + ck[k] * ph[k].conj() * g[k];
            dk[k] = -i * ce * ph[k] * g[k];
        }
        -i * sum
    };

    let mut state_time = sched.t_start;
    for interval in 0..sched.kick_count() {
        let t0 = sched.t_start + T::count(interval) * sched.tau;
        for (p, &d) in ph0.iter_mut().zip(&modes.detunings) {
            *p = Complex::from_polar(T::one(), d * t0);
        }
        for _ in 0..steps {
            for k in 0..n {
                ph_mid[k] = ph0[k] * rot_half[k];
                ph_end[k] = ph_mid[k] * rot_half[k];
            }
            let a1 = deriv(ce, &ck, &ph0, &mut dk);
            for k in 0..n {
                acc[k] = dk[k];
                trial[k] = ck[k] + dk[k] * half;
            }
            let a2 = deriv(ce + a1 * half, &trial, &ph_mid, &mut dk);
            for k in 0..n {
                acc[k] = acc[k] + dk[k] * two;
                trial[k] = ck[k] + dk[k] * half;
            }
            let a3 = deriv(ce + a2 * half, &trial, &ph_mid, &mut dk);
            for k in 0..n {
                acc[k] = acc[k] + dk[k] * two;
                trial[k] = ck[k] + dk[k] * h;
            }
            let a4 = deriv(ce + a3 * h, &trial, &ph_end, &mut dk);
            for k in 0..n {
                ck[k] = ck[k] + (acc[k] + dk[k]) * (h / six);
            }
            ce = ce + (a1 + a2 * two + a3 * two + a4) * (h / six);
            std::mem::swap(&mut ph0, &mut ph_end);
        }
        state_time = sched.kick_time(interval + 1);
        if with_kicks {
            ck.iter_mut().for_each(|c| *c = -*c);
        }
    }

    let state = KickedState { excited: ce, lower: LowerSector::Modes(ck), time: state_time };
    let emission = state.lower_population();
    if emission > T::lit(PERTURBATIVE_LIMIT) {
        return Err(Error::NonPerturbative {
            emission: emission.to_f64().unwrap_or(f64::NAN),
            limit: PERTURBATIVE_LIMIT,
        });
    }
    Ok(state)
}
