use num_complex::Complex64;
use proptest::prelude::*;
use pulsetrain::analytic::{amplitude_pulsed, p_bare, p_pulsed, suppression_factor};
use pulsetrain::{PulseSchedule, TwoLevelDrive};

/// First-order amplitude from a piecewise walk over the 2N intervals: on each
/// interval c_e gains −i v c_g ∫ e^{−iδt} dt, and every kick flips c_g.
fn piecewise_first_order(drive: &TwoLevelDrive<f64>, sched: &PulseSchedule<f64>) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let mut ce = Complex64::new(0.0, 0.0);
    let mut cg = 1.0;
    let d = drive.delta;
    for k in 0..sched.kick_count() {
        let a = sched.t_start + k as f64 * sched.tau;
        let b = a + sched.tau;
        let integral = (Complex64::from_polar(1.0, -d * b) - Complex64::from_polar(1.0, -d * a)) / (-i * d);
        ce += -i * drive.v * cg * integral;
        cg = -cg;
    }
    ce
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ratio_law(
        v in 1e-5..1e-2f64,
        delta in 0.05..5.0f64,
        tau in 0.01..2.0f64,
        n in 1u64..200,
    ) {
        let theta = delta * tau;
        let k = (theta / std::f64::consts::PI).round();
        prop_assume!((theta - k * std::f64::consts::PI).abs() > 1e-3);
        let drive = TwoLevelDrive::real(v, delta);
        let sched = PulseSchedule::new(tau, n).unwrap();
        let bare = p_bare(&drive, sched.total_time());
        prop_assume!(bare > 1e-30);
        let ratio = p_pulsed(&drive, &sched) / bare;
        let expected = suppression_factor(delta, tau).unwrap();
        prop_assert!((ratio - expected).abs() <= 1e-12 * expected, "{ratio} vs {expected}");
    }

    #[test]
    fn closed_form_matches_piecewise_walk(
        re in -1e-2..1e-2f64,
        im in -1e-2..1e-2f64,
        delta in prop_oneof![-4.0..-0.05f64, 0.05..4.0f64],
        tau in 0.05..2.0f64,
        n in 1u64..60,
        t0 in 0.0..5.0f64,
    ) {
        // Near δτ = 2πk the walk itself cancels to a few digits.
        let theta = delta * tau;
        let k = (theta / (2.0 * std::f64::consts::PI)).round();
        prop_assume!((theta - 2.0 * k * std::f64::consts::PI).abs() > 1e-2);
        let drive = TwoLevelDrive::new(Complex64::new(re, im), delta);
        let sched = PulseSchedule::with_start(tau, n, t0).unwrap();
        let walk = piecewise_first_order(&drive, &sched);
        let closed = amplitude_pulsed(&drive, &sched);
        prop_assume!(walk.norm() > 1e-12 * drive.v.norm());
        // The walk's rounding scales with its terms, not with the (possibly cancelled) sum.
        let term_scale = drive.v.norm() * tau * sched.kick_count() as f64;
        let tol = 1e-10 * walk.norm() + 1e-12 * term_scale;
        prop_assert!((walk - closed).norm() <= tol, "{walk} vs {closed}");
    }

    #[test]
    fn probabilities_are_finite_and_nonnegative(
        v in -10.0..10.0f64,
        delta in -50.0..50.0f64,
        tau in 1e-6..10.0f64,
        n in 1u64..10_000,
    ) {
        let drive = TwoLevelDrive::real(v, delta);
        let sched = PulseSchedule::new(tau, n).unwrap();
        let pp = p_pulsed(&drive, &sched);
        let pb = p_bare(&drive, sched.total_time());
        prop_assert!(pp.is_finite() && pp >= 0.0);
        prop_assert!(pb.is_finite() && pb >= 0.0);
    }
}

#[test]
fn probabilities_at_exact_poles_and_zeros() {
    use std::f64::consts::PI;
    for n in [1_u64, 2, 5, 64] {
        let s = PulseSchedule::new(1.0, n).unwrap();
        // δτ = π: pole of tan², bracket → N²
        let p = p_pulsed(&TwoLevelDrive::real(1e-3, PI), &s);
        assert!((p - 16.0 * (n * n) as f64 * 1e-6 / (PI * PI)).abs() <= 1e-9 * p);
        // δτ = 2π: X(τ) = 0
        assert!(p_pulsed(&TwoLevelDrive::real(1e-3, 2.0 * PI), &s) < 1e-30);
        assert_eq!(p_pulsed(&TwoLevelDrive::real(1e-3, 0.0), &s), 0.0);
    }
}

#[test]
fn pulsed_amplitude_at_the_series_switch() {
    // Both sides of the |δτ| = 1e-6 series switch.
    for delta in [0.9e-6, 1.1e-6, 3e-7] {
        let drive = TwoLevelDrive::real(1e-3, delta);
        let sched = PulseSchedule::new(1.0, 3).unwrap();
        let a = amplitude_pulsed(&drive, &sched);
        // v δ τ² N at leading order
        let approx = Complex64::new(1e-3 * delta * 3.0, 0.0);
        assert!((a - approx).norm() <= 1e-5 * approx.norm(), "δ={delta}: {a} vs {approx}");
    }
}
