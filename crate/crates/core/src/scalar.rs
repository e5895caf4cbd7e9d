//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, panicking only if the type cannot hold it at all.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts a cycle or step count.
    fn count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// sin(u)/u with the removable point at zero handled by its series.
pub fn sinc<T: Real>(u: T) -> T {
    if u.abs() < T::lit(1e-6) {
        let u2 = u * u;
        T::one() - u2 / T::lit(6.0) + u2 * u2 / T::lit(120.0)
    } else {
        u.sin() / u
    }
}

/// The interference bracket sin²(nθ)/sin²θ.
///
/// `sin_n_theta` is sin(nθ) as computed by the caller, so that expressions
/// sharing the same numerator cancel it bit for bit. Near θ = kπ the bracket is
/// re-evaluated on the reduced angle and tends to n² exactly at the removable points.
pub fn interference_bracket<T: Real>(theta: T, n: u64, sin_n_theta: T) -> T {
    let nf = T::count(n);
    let k = (theta / T::PI()).round();
    let eps = theta - k * T::PI();
    if eps == T::zero() {
        return nf * nf;
    }
    if eps.abs() < T::lit(1e-6) {
        let r = (nf * eps).sin() / eps.sin();
        return r * r;
    }
    let s = theta.sin();
    sin_n_theta * sin_n_theta / (s * s)
}
