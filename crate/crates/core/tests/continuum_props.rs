use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pulsetrain::continuum::{
    einstein_a, emission_rate, free_space_I, free_space_I0, integrand_bare, integrand_pulsed,
    p_emission_bare, p_emission_pulsed, support, Envelope,
};
use pulsetrain::quadrature::integrate;
use pulsetrain::{BathModel, PulseSchedule, QuadratureSpec};

fn quad() -> QuadratureSpec<f64> {
    QuadratureSpec::default()
}

/// ∫ e^{−|x|}/2 · 4 sin²(xt/2)/x² dx = 2[t·atan t − ½ ln(1 + t²)] for ρ₀ = Γ = 1.
fn exponential_bare_exact(t: f64) -> f64 {
    2.0 * (t * t.atan() - 0.5 * (1.0 + t * t).ln())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn densities_integrate_to_rho0() {
    let q = QuadratureSpec { oscillation_scale: 1e-3, ..quad() };
    for model in [BathModel::<f64>::exponential(1.7, 0.6).unwrap(), BathModel::lorentzian(1.7, 0.6).unwrap()] {
        let (a, b) = support(&model, Envelope::Density);
        // The Lorentzian's density cut sits near 10⁸Γ; integrate a window and add its exact tail.
        let (a, b) = (a.max(-1e4), b.min(1e4));
        let core = integrate(|x| model.weight(x), a, b, &q).unwrap();
        let tail = match model {
            BathModel::Lorentzian { rho0, gamma } => rho0 * (1.0 - 2.0 / PI * (b / gamma).atan()),
            _ => 0.0,
        };
        assert!(rel(core + tail, 1.7) < 1e-6, "{}: {}", model.name(), core + tail);
    }
}

#[test]
fn pointwise_identity_with_tan_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let models = [
        BathModel::exponential(1.0, 1.0).unwrap(),
        BathModel::lorentzian(2.0, 0.5).unwrap(),
        BathModel::free_space(1.0).unwrap(),
    ];
    let mut checked = 0;
    while checked < 1000 {
        let model = &models[checked % 3];
        let x: f64 = match model {
            BathModel::FreeSpaceCubic { .. } => rng.gen_range(-0.999..1.0),
            _ => rng.gen_range(-15.0..15.0),
        };
        let tau: f64 = rng.gen_range(0.05..3.5);
        let n: u64 = rng.gen_range(1..100);
        let half = x * tau / 2.0;
        let k = (half / PI - 0.5).round();
        if (half - (k + 0.5) * PI).abs() < 1e-6 || x.abs() < 1e-9 {
            continue;
        }
        let t = half.tan();
        // Phase taken from the total time T = 2Nτ so both forms round the same argument.
        let total = 2.0 * n as f64 * tau;
        let tan_form = model.weight(x) * t * t * (x * total / 2.0).sin().powi(2) / (x / 2.0).powi(2);
        let finite = integrand_pulsed(model, x, tau, n);
        if tan_form > 0.0 {
            assert!(rel(finite, tan_form) <= 1e-10, "x={x} τ={tau} N={n}: {finite} vs {tan_form}");
        }
        checked += 1;
    }
}

#[test]
fn bracket_limit_on_resonance() {
    let m = BathModel::free_space(2.0).unwrap();
    // xτ = π at x = 1, τ = π
    let at = |n: u64| integrand_pulsed(&m, 1.0, PI, n) / (m.weight(1.0) * 16.0);
    for n in [1_u64, 2, 4, 8, 16] {
        assert!((at(n) - (n * n) as f64).abs() <= 1e-9 * (n * n) as f64);
        assert!((at(2 * n) / at(n) - 4.0).abs() < 1e-9);
    }
}

#[test]
fn exponential_bare_matches_closed_form() {
    let m = BathModel::exponential(1.0, 1.0).unwrap();
    for (tau, n) in [(0.5, 1_u64), (0.5, 20), (0.25, 7), (1.5, 30)] {
        let s = PulseSchedule::new(tau, n).unwrap();
        let got = p_emission_bare(&m, &s, &quad()).unwrap();
        let exact = exponential_bare_exact(s.total_time());
        // Truncation at 1e-8 tail mass dominates the difference.
        assert!((got - exact).abs() < 1e-7 * exact.max(1.0), "T={}: {got} vs {exact}", s.total_time());
    }
}

#[test]
fn lorentzian_bare_matches_closed_form() {
    // p(t) = 2(ρ₀/Γ)(t − (1 − e^{−Γt})/Γ)
    let m = BathModel::lorentzian(1.0, 1.0).unwrap();
    for (tau, n) in [(0.5_f64, 1_u64), (0.5, 10)] {
        let s = PulseSchedule::new(tau, n).unwrap();
        let t = s.total_time();
        let exact = 2.0 * (t - (1.0 - (-t).exp()));
        let got = p_emission_bare(&m, &s, &quad()).unwrap();
        assert!(rel(got, exact) < 1e-6, "{got} vs {exact}");
    }
}

#[test]
fn emission_rate_closed_forms() {
    let e = BathModel::exponential(1.0, 1.0).unwrap();
    let l = BathModel::lorentzian(1.0, 1.0).unwrap();
    for t in [0.1, 1.0, 5.0, 10.0, 100.0] {
        let re = emission_rate(&e, t, &quad()).unwrap();
        assert!(rel(re, 2.0 * f64::atan(t)) < 1e-6, "t={t}: {re}");
        let rl = emission_rate(&l, t, &quad()).unwrap();
        assert!(rel(rl, 2.0 * (1.0 - (-t).exp())) < 1e-6, "t={t}: {rl}");
    }
    // t → 0⁺: rate ≈ 2t·∫ρ
    let small = emission_rate(&e, 1e-4, &quad()).unwrap();
    assert!(rel(small, 2e-4) < 1e-3);
}

#[test]
fn einstein_rate_emerges_at_long_times() {
    for m in [BathModel::exponential(1.0, 1.0).unwrap(), BathModel::lorentzian(1.0, 1.0).unwrap()] {
        let a = einstein_a(&m).unwrap();
        let rate = emission_rate(&m, 100.0, &quad()).unwrap();
        assert!(rel(rate, a) < 0.02, "{}: {rate} vs {a}", m.name());
        // Averaged finite-difference slope over Γt ∈ [100, 110].
        let p = |t: f64| p_emission_bare(&m, &PulseSchedule::new(t / 2.0, 1).unwrap(), &quad()).unwrap();
        let slope = (p(110.0) - p(100.0)) / 10.0;
        assert!(rel(slope, a) < 0.02, "{}: slope {slope} vs {a}", m.name());
    }
}

#[test]
fn rate_is_the_derivative_of_bare_emission() {
    let m = BathModel::exponential(1.0, 1.0).unwrap();
    let h = 1e-3;
    let p = |t: f64| p_emission_bare(&m, &PulseSchedule::new(t / 2.0, 1).unwrap(), &quad()).unwrap();
    let fd = (p(5.0 + h) - p(5.0 - h)) / (2.0 * h);
    let rate = emission_rate(&m, 5.0, &quad()).unwrap();
    assert!(rel(fd, rate) < 5e-3, "{fd} vs {rate}");
}

#[test]
fn suppression_bounded_by_global_interference_factor() {
    let exp = BathModel::exponential(1.0, 1.0).unwrap();
    let (_, x_max) = support(&exp, Envelope::Bare);
    for tau in [0.02_f64, 0.05, 0.08] {
        let bound = (x_max * tau / 2.0).tan().powi(2);
        assert!(bound < 1.0);
        for n in [5_u64, 20, 80] {
            let s = PulseSchedule::new(tau, n).unwrap();
            let pp = p_emission_pulsed(&exp, &s, &quad()).unwrap();
            let pb = p_emission_bare(&exp, &s, &quad()).unwrap();
            assert!(pp <= bound * pb, "τ={tau} N={n}: {pp} > {bound}·{pb}");
        }
    }
    for tau in [0.5, 1.0, 1.5] {
        let bound = (tau / 2.0f64).tan().powi(2);
        for n in [1_u64, 10, 50] {
            let i = free_space_I(tau, n, 1.0, &quad()).unwrap();
            let i0 = free_space_I0(tau, n, 1.0, &quad()).unwrap();
            assert!(i <= bound * i0, "τ={tau} N={n}");
        }
    }
}

#[test]
fn emission_grows_quasi_linearly() {
    let m = BathModel::exponential(1.0, 1.0).unwrap();
    let tau = 0.5;
    for pulsed in [false, true] {
        let p = |n: u64| {
            let s = PulseSchedule::new(tau, n).unwrap();
            if pulsed {
                p_emission_pulsed(&m, &s, &quad()).unwrap()
            } else {
                p_emission_bare(&m, &s, &quad()).unwrap()
            }
        };
        let (p20, p40, p80) = (p(20), p(40), p(80));
        let s1 = (p40 - p20) / 20.0;
        let s2 = (p80 - p40) / 40.0;
        assert!(rel(s2, s1) < 0.10, "pulsed={pulsed}: slopes {s1} {s2}");
    }
}

#[test]
fn free_space_zero_limit_and_tau_one_suppression() {
    assert!(free_space_I(1e-7, 1, 1.0, &quad()).unwrap() < 1e-20);
    assert!(free_space_I0(1e-7, 1, 1.0, &quad()).unwrap() < 1e-10);
    for n in [1_u64, 3, 17, 50] {
        let i = free_space_I(1.0, n, 1.0, &quad()).unwrap();
        let i0 = free_space_I0(1.0, n, 1.0, &quad()).unwrap();
        assert!(i < i0);
    }
}

#[test]
fn free_space_bare_rate_plateau() {
    // With a wide cutoff the bare integral gains 2π·(x+1)³|₀ = 2π per unit of T = 2Nτ.
    let tau = 1.0;
    let i0 = |n: u64| free_space_I0(tau, n, 50.0, &quad()).unwrap();
    let slope = (i0(200) - i0(100)) / (2.0 * tau * 100.0);
    assert!(rel(slope, 2.0 * PI) < 0.01, "slope {slope}");
}

#[test]
fn halving_tolerances_moves_results_less_than_the_old_tolerance() {
    let coarse = quad();
    let fine = QuadratureSpec { abs_tol: coarse.abs_tol / 2.0, rel_tol: coarse.rel_tol / 2.0, ..coarse };
    let exp = BathModel::exponential(1.0, 1.0).unwrap();
    let lor = BathModel::lorentzian(1.0, 1.0).unwrap();
    let s = PulseSchedule::new(0.5, 20).unwrap();
    type Job = Box<dyn Fn(&QuadratureSpec<f64>) -> f64>;
    let jobs: Vec<Job> = vec![
        Box::new(move |q| p_emission_pulsed(&exp, &s, q).unwrap()),
        Box::new(move |q| p_emission_bare(&exp, &s, q).unwrap()),
        Box::new(move |q| p_emission_pulsed(&lor, &s, q).unwrap()),
        Box::new(move |q| emission_rate(&lor, 10.0, q).unwrap()),
        Box::new(|q| free_space_I(PI, 30, 1.0, q).unwrap()),
        Box::new(|q| free_space_I0(1.0, 30, 1.0, q).unwrap()),
    ];
    for job in jobs {
        let a = job(&coarse);
        let b = job(&fine);
        let tol = coarse.abs_tol.max(coarse.rel_tol * a.abs());
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }
}

#[test]
fn pointwise_pulsed_never_exceeds_bare_when_interference_is_weak() {
    let m = BathModel::free_space(1.0).unwrap();
    for i in 0..=400 {
        let x = -1.0 + 2.0 * i as f64 / 400.0;
        let b = integrand_bare(&m, x, 1.0, 13);
        let p = integrand_pulsed(&m, x, 1.0, 13);
        assert!(p <= (0.5f64).tan().powi(2) * b * (1.0 + 1e-12) + 1e-300);
    }
}
