//! Suppression (and acceleration) of decay into a continuum by trains of
//! instantaneous 2π-pulses on an auxiliary transition.
//!
//! * [`analytic`]: first-order closed forms for a weakly driven two-level system.
//! * [`continuum`]: emission into structured continua and the free-space integrals.
//! * [`oracle`]: brute-force time-domain propagation with exact sign-flip kicks.
//! * [`quadrature`]: adaptive quadrature for rapidly oscillating integrands.
//! * [`cli`]: sweep drivers behind the `pulsetrain` binary.
//!
//! The numerics are generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the scalar for the common cases.

pub mod analytic;
pub mod cli;
pub mod continuum;
pub mod error;
pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use model::{x_factor, BathModel, PulseSchedule, TwoLevelDrive};
pub use oracle::{DiscretizedContinuum, KickedState, LowerSector};
pub use quadrature::QuadratureSpec;
pub use scalar::Real;
pub use sweep::SweepResult;

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;

pub type PulseSchedule64 = PulseSchedule<f64>;
pub type PulseSchedule32 = PulseSchedule<f32>;
pub type TwoLevelDrive64 = TwoLevelDrive<f64>;
pub type TwoLevelDrive32 = TwoLevelDrive<f32>;
pub type BathModel64 = BathModel<f64>;
pub type BathModel32 = BathModel<f32>;
pub type QuadratureSpec64 = QuadratureSpec<f64>;
pub type QuadratureSpec32 = QuadratureSpec<f32>;
pub type DiscretizedContinuum64 = DiscretizedContinuum<f64>;
pub type KickedState64 = KickedState<f64>;
