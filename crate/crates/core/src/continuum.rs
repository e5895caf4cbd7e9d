//! Emission into a continuum of modes, with and without the pulse train.
//!
//! The sums over modes become integrals over the detuning x weighted by the
//! bath's spectral weight. The pulsed integrand is always evaluated in the
//! pole-free form
//!
//! ```text
//! w(x) · 16 sin⁴(xτ/2)/x² · sin²(xτN)/sin²(xτ)
//! ```
//!
//! and the bare one as w(x)·sin²(xτN)/(x/2)². Both share the numerator
//! sin(xτN), so their pointwise ratio is tan²(xτ/2) to rounding.

use crate::error::{Error, Result};
use crate::model::{BathModel, PulseSchedule};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::scalar::{interference_bracket, sinc, Real};

/// Tail weight (relative to ρ₀) allowed outside the truncated support of the
/// one-dimensional models.
pub const TAIL_TOLERANCE: f64 = 1e-8;

/// Integrand shape, used to pick how far a heavy-tailed density must be followed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Envelope<T> {
    Density,
    Bare,
    Pulsed { n_cycles: u64 },
    Rate { t: T },
}

/// Finite integration range for `model` under the given integrand envelope.
///
/// The exponential bath is cut where its tail mass drops below
/// [`TAIL_TOLERANCE`]·ρ₀. The Lorentzian tail is too heavy for that, so it is
/// cut where the tail of the full integrand is below the same tolerance: the
/// 1/x² kernels (pulsed kernel taken at its mean, 16N/x²) and, for the
/// emission rate, the alternating-tail bound 2·g(X)/t on g(x) = 2ρ(x)/x.
pub fn support<T: Real>(model: &BathModel<T>, envelope: Envelope<T>) -> (T, T) {
    let tol = T::lit(TAIL_TOLERANCE);
    match *model {
        BathModel::FreeSpaceCubic { cutoff } => (-T::one(), cutoff),
        BathModel::Exponential { gamma, .. } => {
            let x = gamma * (T::one() / tol).ln();
            (-x, x)
        }
        BathModel::Lorentzian { gamma, .. } => {
            let third = T::one() / T::lit(3.0);
            let pi = T::PI();
            let x = match envelope {
                Envelope::Density => gamma / (pi * tol / T::lit(2.0)).tan(),
                Envelope::Bare => (T::lit(8.0) * gamma / (T::lit(3.0) * pi * tol)).powf(third),
                Envelope::Pulsed { n_cycles } => {
                    (T::lit(32.0) * T::count(n_cycles) * gamma / (T::lit(3.0) * pi * tol)).powf(third)
                }
                Envelope::Rate { t } => (T::lit(8.0) * gamma / (pi * t * tol)).powf(third),
            };
            let x = x.max(T::lit(10.0) * gamma);
            (-x, x)
        }
    }
}

/// Pulsed kernel without the spectral weight: 16 sin⁴(xτ/2)/x² · sin²(xτN)/sin²(xτ).
pub fn pulsed_kernel<T: Real>(x: T, tau: T, n_cycles: u64) -> T {
    let theta = x * tau;
    let s = sinc(theta / T::lit(2.0));
    let interval = tau * tau * theta * theta * s * s * s * s;
    interval * interference_bracket(theta, n_cycles, sin_total_phase(x, tau, n_cycles))
}

/// Bare kernel without the spectral weight: sin²(xτN)/(x/2)².
pub fn bare_kernel<T: Real>(x: T, tau: T, n_cycles: u64) -> T {
    let t = T::lit(2.0) * T::count(n_cycles) * tau;
    let phase = x * t / T::lit(2.0);
    if phase.abs() < T::lit(1e-6) {
        let s = sinc(phase);
        t * t * s * s
    } else {
        let r = sin_total_phase(x, tau, n_cycles) / (x / T::lit(2.0));
        r * r
    }
}

fn sin_total_phase<T: Real>(x: T, tau: T, n_cycles: u64) -> T {
    let t = T::lit(2.0) * T::count(n_cycles) * tau;
    (x * t / T::lit(2.0)).sin()
}

pub fn integrand_pulsed<T: Real>(model: &BathModel<T>, x: T, tau: T, n_cycles: u64) -> T {
    let w = model.weight(x);
    if w == T::zero() {
        return T::zero();
    }
    w * pulsed_kernel(x, tau, n_cycles)
}

pub fn integrand_bare<T: Real>(model: &BathModel<T>, x: T, tau: T, n_cycles: u64) -> T {
    let w = model.weight(x);
    if w == T::zero() {
        return T::zero();
    }
    w * bare_kernel(x, tau, n_cycles)
}

/// Emission probability with the pulse train applied.
pub fn p_emission_pulsed<T: Real>(
    model: &BathModel<T>,
    sched: &PulseSchedule<T>,
    quad: &QuadratureSpec<T>,
) -> Result<T> {
    model.validate()?;
    let (a, b) = support(model, Envelope::Pulsed { n_cycles: sched.n_cycles });
    let quad = quad.resolving(sched.oscillation_scale());
    let (tau, n) = (sched.tau, sched.n_cycles);
    integrate(|x| integrand_pulsed(model, x, tau, n), a, b, &quad)
}

/// Emission probability over the same total time 2Nτ without pulses.
pub fn p_emission_bare<T: Real>(
    model: &BathModel<T>,
    sched: &PulseSchedule<T>,
    quad: &QuadratureSpec<T>,
) -> Result<T> {
    model.validate()?;
    let (a, b) = support(model, Envelope::Bare);
    let quad = quad.resolving(sched.oscillation_scale());
    let (tau, n) = (sched.tau, sched.n_cycles);
    integrate(|x| integrand_bare(model, x, tau, n), a, b, &quad)
}

/// Long-time emission rate 2π·ρ(0).
pub fn einstein_a<T: Real>(model: &BathModel<T>) -> Result<T> {
    model.validate()?;
    match *model {
        BathModel::Lorentzian { rho0, gamma } => Ok(T::lit(2.0) * rho0 / gamma),
        BathModel::Exponential { rho0, gamma } => Ok(T::PI() * rho0 / gamma),
        BathModel::FreeSpaceCubic { .. } => Err(Error::Unsupported(
            "no Einstein coefficient is defined for the free-space cubic weight".into(),
        )),
    }
}

/// Instantaneous emission rate ∂p/∂t = ∫ w(x)·2 sin(xt)/x dx of the bare decay.
pub fn emission_rate<T: Real>(model: &BathModel<T>, t: T, quad: &QuadratureSpec<T>) -> Result<T> {
    model.validate()?;
    if t.is_nan() || t <= T::zero() {
        return Err(Error::InvalidParameter(format!("emission rate needs t > 0, got {t}")));
    }
    let (a, b) = support(model, Envelope::Rate { t });
    let quad = quad.resolving(t);
    let two = T::lit(2.0);
    integrate(|x| model.weight(x) * two * t * sinc(x * t), a, b, &quad)
}

/// Free-space integral with the pulse train, (x+1)³ weight on [−1, cutoff], ω_eg = 1.
#[allow(non_snake_case)]
pub fn free_space_I<T: Real>(tau: T, n_cycles: u64, cutoff: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let model = BathModel::free_space(cutoff)?;
    let sched = PulseSchedule::new(tau, n_cycles)?;
    p_emission_pulsed(&model, &sched, quad)
}

/// Free-space integral with the interference factor dropped.
#[allow(non_snake_case)]
pub fn free_space_I0<T: Real>(tau: T, n_cycles: u64, cutoff: T, quad: &QuadratureSpec<T>) -> Result<T> {
    let model = BathModel::free_space(cutoff)?;
    let sched = PulseSchedule::new(tau, n_cycles)?;
    p_emission_bare(&model, &sched, quad)
}
