//! First-order transition probabilities of a weakly driven two-level system,
//! with and without a train of 2π-pulses on an auxiliary transition.
//!
//! Every kick multiplies the |g⟩ amplitude by −1. At first order in v the
//! excited amplitude after N cycles is
//!
//! ```text
//! c_e = i v X(τ)² / (−iδ) · Σ_{p=0}^{N−1} e^{−2iδτp − iδt₀},   X(τ) = e^{−iδτ} − 1
//! ```
//!
//! whose modulus squared is |v|²·16 sin⁴(δτ/2)/δ² · sin²(δτN)/sin²(δτ). This
//! pole-free form is used internally; tan²(δτ/2) only appears in
//! [`suppression_factor`].

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::model::{x_factor, PulseSchedule, TwoLevelDrive};
use crate::scalar::{interference_bracket, sinc, Real};

/// Bare transition probability |v|²·sin²(δt/2)/(δ/2)².
pub fn p_bare<T: Real>(drive: &TwoLevelDrive<T>, t: T) -> T {
    let s = sin_half_phase(drive.delta, t);
    p_bare_with(drive.v.norm_sqr(), drive.delta, t, s)
}

// t²·sinc²(δt/2) = sin²(δt/2)/(δ/2)², written so δ = 0 needs no special case.
fn p_bare_with<T: Real>(v2: T, delta: T, t: T, sin_half: T) -> T {
    let half = delta * t / T::lit(2.0);
    if half.abs() < T::lit(1e-6) {
        let s = sinc(half);
        v2 * t * t * s * s
    } else {
        let r = sin_half / (delta / T::lit(2.0));
        v2 * r * r
    }
}

fn sin_half_phase<T: Real>(delta: T, t: T) -> T {
    (delta * t / T::lit(2.0)).sin()
}

/// Transition amplitude after N cycles, geometric sum in closed form.
pub fn amplitude_pulsed<T: Real>(drive: &TwoLevelDrive<T>, sched: &PulseSchedule<T>) -> Complex<T> {
    let delta = drive.delta;
    let tau = sched.tau;
    let i = Complex::new(T::zero(), T::one());
    let theta = delta * tau;
    // X(τ)/(−iδ) = τ·sinc(δτ/2)·e^{−iδτ/2}, finite at δ = 0.
    let x_over = Complex::from_polar(tau * sinc(theta / T::lit(2.0)), -theta / T::lit(2.0));
    let cycle = i * drive.v * x_factor(delta, tau) * x_over;
    cycle * geometric_phase_sum(theta, sched.n_cycles) * Complex::from_polar(T::one(), -delta * sched.t_start)
}

/// Σ_{p=0}^{N−1} e^{−2iθp} = e^{−iθ(N−1)}·sin(Nθ)/sin θ, with the θ → kπ limit N·(±1).
fn geometric_phase_sum<T: Real>(theta: T, n: u64) -> Complex<T> {
    let nf = T::count(n);
    let k = (theta / T::PI()).round();
    let eps = theta - k * T::PI();
    let ratio = if eps.abs() < T::lit(1e-6) {
        // sin(Nθ)/sin θ = (−1)^{k(N−1)}·sin(Nε)/sin ε near θ = kπ
        let sign = if (k.to_i64().unwrap_or(0) * (n as i64 - 1)).rem_euclid(2) == 0 {
            T::one()
        } else {
            -T::one()
        };
        let reduced = if eps == T::zero() { nf } else { (nf * eps).sin() / eps.sin() };
        sign * reduced
    } else {
        (nf * theta).sin() / theta.sin()
    };
    Complex::from_polar(ratio, -theta * (nf - T::one()))
}

/// Net transition probability after N cycles with the pulse train applied.
pub fn p_pulsed<T: Real>(drive: &TwoLevelDrive<T>, sched: &PulseSchedule<T>) -> T {
    let delta = drive.delta;
    let tau = sched.tau;
    let theta = delta * tau;
    let half = theta / T::lit(2.0);
    // 16 sin⁴(δτ/2)/δ² = τ²·θ²·sinc⁴(θ/2)
    let s = sinc(half);
    let interval = tau * tau * theta * theta * s * s * s * s;
    // sin(δ·T/2) with T = 2Nτ, the same numerator p_bare uses.
    let sin_n = sin_half_phase(delta, sched.total_time());
    drive.v.norm_sqr() * interval * interference_bracket(theta, sched.n_cycles, sin_n)
}

/// tan²(δτ/2), the ratio of pulsed to bare probability at equal total time 2Nτ.
pub fn suppression_factor<T: Real>(delta: T, tau: T) -> Result<T> {
    let theta = delta * tau;
    if on_odd_pi(theta) {
        return Err(Error::PoleAtOddPi { delta_tau: theta.to_f64().unwrap_or(f64::NAN) });
    }
    let t = (theta / T::lit(2.0)).tan();
    Ok(t * t)
}

/// True when θ is an odd multiple of π to within a few ulps of θ.
pub fn on_odd_pi<T: Real>(theta: T) -> bool {
    let k = (theta / T::PI()).round();
    let odd = (k / T::lit(2.0)).fract() != T::zero();
    let tol = T::lit(8.0) * T::epsilon() * theta.abs().max(T::one());
    odd && (theta - k * T::PI()).abs() <= tol
}
