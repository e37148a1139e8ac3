mod common;

use bcs_tc_lab::kernels::PhysParams;
use bcs_tc_lab::quadrature::integrals::{integrate_m_t, thermal_breakpoints, weighted_m_integral, MWeight};
use bcs_tc_lab::quadrature::*;
use bcs_tc_lab::Error;
use proptest::prelude::*;

#[test]
fn gauss_legendre_weights_sum_to_two() {
    for n in [1, 2, 5, 16, 40] {
        let r = gauss_legendre(n);
        assert_eq!(r.order(), n);
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }
}

#[test]
fn clip_keeps_endpoints_and_drops_outsiders() {
    assert_eq!(clip_breakpoints(0.0, 2.0, &[-1.0, 0.5, 0.5, 3.0, f64::NAN]), vec![0.0, 0.5, 2.0]);
}

#[test]
fn endpoint_singularity() {
    // ∫₀¹ ln(x) dx = −1
    let r = integrate_interval(|x: f64| x.ln(), 0.0, 1.0, &[], 1e-12, 1e-12).unwrap();
    assert!((r.value + 1.0).abs() < 1e-10, "{}", r.value);
}

#[test]
fn interior_kink_with_breakpoint() {
    let r = integrate_interval(|x: f64| (x - 0.3).abs(), 0.0, 1.0, &[0.3], 1e-14, 1e-14).unwrap();
    assert!((r.value - 0.29).abs() < 1e-14);
}

#[test]
fn accuracy_error_when_budget_exhausted() {
    let scheme = PanelScheme { breakpoints: vec![0.0, 1.0], nodes_per_panel: 2, max_depth: 2, abs_tol: 1e-15, rel_tol: 1e-15 };
    assert!(matches!(integrate(|x: f64| (50.0 * x).sin(), &scheme), Err(Error::Accuracy { .. })));
}

#[test]
fn n_integral_against_simpson() {
    for (q, t) in [(0.0, 0.05), (0.4, 0.05), (1.0, 0.1), (1.6, 0.02)] {
        let params = PhysParams::new(1.0, t, 1);
        let got = integrate_n_t(q, &params, &PanelScheme::default()).unwrap().value;
        let mut pts = thermal_breakpoints(q, 1.0, t);
        pts.retain(|p| *p < 3f64.sqrt());
        pts.push(3f64.sqrt());
        let want = common::simpson_pieces(&|p| common::n_ref(p, q, 1.0, t), &pts, 1e-12);
        assert!((got - want).abs() < 1e-9 * want, "q={q} T={t}: {got} vs {want}");
    }
}

#[test]
fn m_integral_against_simpson() {
    for (q, t) in [(0.3, 0.05), (1.2, 0.05)] {
        let params = PhysParams::new(1.0, t, 1);
        let got = integrate_m_t(q, &params, &PanelScheme::default()).unwrap().value;
        let mut pts = thermal_breakpoints(q, 1.0, t);
        pts.retain(|p| *p < 3f64.sqrt());
        pts.push(3f64.sqrt());
        // b_ref cancels near p² + q² = μ; split there and stay clear of it
        let c = (1.0 - q * q).max(0.0).sqrt();
        let f = |p: f64| if (p * p + q * q - 1.0).abs() < 1e-6 { common::b_ref(p + 2e-6, q, 1.0, t) } else { common::b_ref(p, q, 1.0, t) };
        pts.push(c);
        pts.sort_by(f64::total_cmp);
        let want = common::simpson_pieces(&f, &pts, 1e-12);
        assert!((got - want).abs() < 1e-7 * want, "q={q} T={t}: {got} vs {want}");
    }
}

#[test]
fn full_line_against_rank_one_oracle() {
    for t in [0.3, 0.05, 0.005] {
        let params = PhysParams::new(1.0, t, 1);
        let got = integrate_n_t_fullline(0.0, &params, &PanelScheme::default().with_tol(1e-13, 1e-13)).unwrap();
        let want = common::rank_one_integral(1.0, t);
        assert!((got.value - want).abs() < 1e-8 * want, "T={t}: {} vs {want}", got.value);
        assert!(got.tail > 0.0 && got.tail <= got.tail_bound);
    }
}

#[test]
fn thermal_layer_is_resolved_at_low_temperature() {
    // B_T(·, √μ) concentrates in p ≲ T/√μ; its integral must not vanish
    for t in [1e-4, 1e-6] {
        let params = PhysParams::new(1.0, t, 1);
        let m = integrate_m_t(1.0, &params, &PanelScheme::default()).unwrap().value;
        assert!(m > 0.1, "T={t}: m = {m}");
    }
}

#[test]
fn thermal_breakpoints_reach_the_thermal_width() {
    let pts = thermal_breakpoints(0.0, 1.0, 1e-4);
    assert!(pts.windows(2).all(|w| w[0] < w[1]));
    assert!(pts.iter().all(|p| *p >= 0.0));
    let nearest = pts.iter().filter(|p| **p != 1.0).map(|p| (p - 1.0).abs()).fold(f64::INFINITY, f64::min);
    assert!(nearest <= 4.0 * 1e-4 / 8.0 && nearest > 1e-4 / 8.0);
}

#[test]
fn weighted_integrals_reject_out_of_range_momenta() {
    let s = PanelScheme::default();
    assert!(matches!(weighted_m_integral(0.9, 1.0, MWeight::AbsPMinusSqrtMu, &s), Err(Error::Precondition(_))));
    assert!(matches!(weighted_m_integral(0.1, 1.0, MWeight::AbsP, &s), Err(Error::Precondition(_))));
    assert!(weighted_m_integral(0.4, 1.0, MWeight::AbsPMinusSqrtMu, &s).unwrap().value.is_finite());
}

#[test]
fn closed_forms_reject_wrong_branch() {
    let bad = ClosedForm::ShellWeightedInner { q: 0.8, mu: 1.0 };
    assert!(matches!(bad.evaluate(), Err(Error::Precondition(_))));
    assert!(ClosedForm::CentreWeightedInner { q: 0.5, mu: -1.0 }.evaluate().is_err());
}

#[test]
fn region_integral_in_two_dimensions_against_nested_simpson() {
    let (mu, q) = (1.0f64, 1.5f64);
    let spec = RegionSpec { dim: 2, region: Region::A2, q };
    let got = region_integral_m(&spec, mu, 0.3, 1e-8).unwrap();
    // 4 ∫₀^{√3} dp₁ ∫ dρ M χ_{A2}, with the p₁-integrand integrated in ρ between its cuts
    let inner = |p1: f64| {
        let r2 = 3.0 - p1 * p1;
        if r2 <= 0.0 {
            return 0.0;
        }
        let f = |rho: f64| {
            let p2 = p1 * p1 + rho * rho;
            let a = p2 + 2.0 * p1 * q + q * q - mu;
            let b = p2 - 2.0 * p1 * q + q * q - mu;
            if a * b < 0.0 { 2.0 / (a.abs() + b.abs()) } else { 0.0 }
        };
        let mut cuts = vec![0.0, r2.sqrt()];
        for z in [mu - (p1 + q).powi(2), mu - (p1 - q).powi(2)] {
            if z > 0.0 && z < r2 {
                cuts.push(z.sqrt());
            }
        }
        cuts.sort_by(f64::total_cmp);
        common::simpson_pieces(&f, &cuts, 1e-11)
    };
    let outer = [0.0, q - 1.0, 1.0, q, 3f64.sqrt()];
    let want = 4.0 * common::simpson_pieces(&inner, &outer, 1e-9);
    assert!((got.value - want).abs() < 1e-5 * want, "{} vs {want}", got.value);
}

proptest! {
    #[test]
    fn gauss_legendre_is_exact_for_polynomials(n in 1usize..30, c in proptest::collection::vec(-1.0..1.0f64, 60)) {
        let r = gauss_legendre(n);
        let deg = 2 * n - 1;
        let poly = |x: f64| c[..=deg.min(59)].iter().rev().fold(0.0, |acc, a| acc * x + a);
        let exact: f64 = c[..=deg.min(59)].iter().enumerate().map(|(k, a)| if k % 2 == 0 { 2.0 * a / (k as f64 + 1.0) } else { 0.0 }).sum();
        prop_assert!((r.integrate(-1.0, 1.0, poly) - exact).abs() < 1e-12);
    }

    #[test]
    fn integral_is_additive_over_a_split(a in -2.0..0.0f64, b in 0.5..3.0f64, c in 0.01..0.49f64) {
        let f = |x: f64| (x * x + 0.1).sqrt().recip();
        let mid = a + c * (b - a);
        let whole = integrate_interval(f, a, b, &[], 1e-13, 1e-13).unwrap().value;
        let parts = integrate_interval(f, a, mid, &[], 1e-13, 1e-13).unwrap().value + integrate_interval(f, mid, b, &[], 1e-13, 1e-13).unwrap().value;
        prop_assert!((whole - parts).abs() < 1e-11);
    }

    #[test]
    fn n_integral_decreases_with_temperature(q in 0.0..2.0f64, lt in -4.0..-0.5f64) {
        let t = 10f64.powf(lt);
        let s = PanelScheme::default();
        let lo = integrate_n_t(q, &PhysParams::new(1.0, t, 1), &s).unwrap().value;
        let hi = integrate_n_t(q, &PhysParams::new(1.0, 2.0 * t, 1), &s).unwrap().value;
        prop_assert!(hi <= lo * (1.0 + 1e-9));
    }
}
