//! Domain types shared by the analytic, continuum and oracle modules.
//!
//! Times and frequencies are dimensionless. Bath runs measure them in units of
//! the bath width Γ, free-space runs in units of the transition frequency ω_eg.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Geometry of the pulse train: 2N intervals of length τ starting at t₀, with an
/// instantaneous kick at the end of every interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSchedule<T> {
    pub tau: T,
    pub n_cycles: u64,
    pub t_start: T,
}

impl<T: Real> PulseSchedule<T> {
    pub fn new(tau: T, n_cycles: u64) -> Result<Self> {
        Self::with_start(tau, n_cycles, T::zero())
    }

    pub fn with_start(tau: T, n_cycles: u64, t_start: T) -> Result<Self> {
        if !tau.is_finite() || tau <= T::zero() {
            return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
        }
        if n_cycles == 0 {
            return Err(Error::InvalidParameter("n_cycles must be at least 1".into()));
        }
        if !t_start.is_finite() {
            return Err(Error::InvalidParameter("t_start must be finite".into()));
        }
        Ok(Self { tau, n_cycles, t_start })
    }

    /// 2·N·τ.
    pub fn total_time(&self) -> T {
        T::lit(2.0) * T::count(self.n_cycles) * self.tau
    }

    /// Number of kicks, one at t₀ + kτ for k = 1..=2N.
    pub fn kick_count(&self) -> u64 {
        2 * self.n_cycles
    }

    /// Time of the k-th kick, k = 1..=2N.
    pub fn kick_time(&self, k: u64) -> T {
        self.t_start + T::count(k) * self.tau
    }

    /// Fastest angular frequency of sin²(xτN) as a function of x.
    pub fn oscillation_scale(&self) -> T {
        self.total_time()
    }
}

/// Weak perturbation driving the unwanted |g⟩ → |e⟩ transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelDrive<T> {
    pub v: Complex<T>,
    pub delta: T,
}

impl<T: Real> TwoLevelDrive<T> {
    pub fn new(v: Complex<T>, delta: T) -> Self {
        Self { v, delta }
    }

    pub fn real(v: T, delta: T) -> Self {
        Self { v: Complex::new(v, T::zero()), delta }
    }

    /// True when |v|·t stays below `threshold` (0.1 is the customary choice), i.e.
    /// when first-order perturbation theory applies over the schedule.
    pub fn is_perturbative(&self, sched: &PulseSchedule<T>, threshold: T) -> bool {
        self.v.norm() * sched.total_time() < threshold
    }
}

/// Density of states of the reservoir.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BathModel<T> {
    /// ρ(x) = ρ₀Γ/π / (x² + Γ²)
    Lorentzian { rho0: T, gamma: T },
    /// ρ(x) = ρ₀/(2Γ)·e^{−|x|/Γ}
    Exponential { rho0: T, gamma: T },
    /// (x+1)³ on [−1, cutoff], zero elsewhere; x = (ω − ω_eg)/ω_eg.
    FreeSpaceCubic { cutoff: T },
}

impl<T: Real> BathModel<T> {
    pub fn lorentzian(rho0: T, gamma: T) -> Result<Self> {
        let m = BathModel::Lorentzian { rho0, gamma };
        m.validate()?;
        Ok(m)
    }

    pub fn exponential(rho0: T, gamma: T) -> Result<Self> {
        let m = BathModel::Exponential { rho0, gamma };
        m.validate()?;
        Ok(m)
    }

    pub fn free_space(cutoff: T) -> Result<Self> {
        let m = BathModel::FreeSpaceCubic { cutoff };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: T| {
            if x > T::zero() && x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {x}")))
            }
        };
        match *self {
            BathModel::Lorentzian { rho0, gamma } | BathModel::Exponential { rho0, gamma } => {
                positive("rho0", rho0)?;
                positive("gamma", gamma)
            }
            BathModel::FreeSpaceCubic { cutoff } => positive("cutoff", cutoff),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BathModel::Lorentzian { .. } => "lorentzian",
            BathModel::Exponential { .. } => "exponential",
            BathModel::FreeSpaceCubic { .. } => "freespace",
        }
    }

    /// Spectral weight at detuning `x`.
    pub fn weight(&self, x: T) -> T {
        match *self {
            BathModel::Lorentzian { rho0, gamma } => rho0 * gamma / T::PI() / (x * x + gamma * gamma),
            BathModel::Exponential { rho0, gamma } => {
                rho0 / (T::lit(2.0) * gamma) * (-x.abs() / gamma).exp()
            }
            BathModel::FreeSpaceCubic { cutoff } => {
                if x < -T::one() || x > cutoff {
                    T::zero()
                } else {
                    let y = x + T::one();
                    y * y * y
                }
            }
        }
    }

    /// Total spectral weight ∫ρ dx (ρ₀ for the one-dimensional models).
    pub fn total_weight(&self) -> T {
        match *self {
            BathModel::Lorentzian { rho0, .. } | BathModel::Exponential { rho0, .. } => rho0,
            BathModel::FreeSpaceCubic { cutoff } => (cutoff + T::one()).powi(4) / T::lit(4.0),
        }
    }

    /// Γ for the one-dimensional models.
    pub fn gamma(&self) -> Option<T> {
        match *self {
            BathModel::Lorentzian { gamma, .. } | BathModel::Exponential { gamma, .. } => Some(gamma),
            BathModel::FreeSpaceCubic { .. } => None,
        }
    }
}

/// X(t) = e^{−iδt} − 1.
pub fn x_factor<T: Real>(delta: T, t: T) -> Complex<T> {
    Complex::from_polar(T::one(), -delta * t) - Complex::new(T::one(), T::zero())
}
