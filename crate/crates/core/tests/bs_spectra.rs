mod common;

use std::f64::consts::PI;

use bcs_tc_lab::bs_spectra::weighted_rule::panel_rule;
use bcs_tc_lab::bs_spectra::*;
use bcs_tc_lab::interactions::InteractionModel;
use bcs_tc_lab::kernels::PhysParams;
use bcs_tc_lab::Error;
use proptest::prelude::*;

fn spec(kernel: KernelKind, q: f64, temp: f64, model: InteractionModel) -> BsOperatorSpec {
    BsOperatorSpec {
        kernel,
        q,
        sector: Sector::Symmetric,
        params: PhysParams::new(1.0, temp, 1),
        interaction: model,
        grid: GridOptions::default(),
    }
}

#[test]
fn delta_matrix_is_rank_one_with_known_trace() {
    let model = InteractionModel::delta(1.0);
    for t in [0.3, 0.05] {
        let top = bs_top(&spec(KernelKind::K, 0.0, t, model)).unwrap();
        let want = common::rank_one_integral(1.0, t) / (2.0 * PI);
        assert!((top - want).abs() < 1e-8 * want, "T={t}: {top} vs {want}");
        let anti = BsOperatorSpec { sector: Sector::Antisymmetric, ..spec(KernelKind::K, 0.0, t, model) };
        assert!(bs_top(&anti).unwrap().abs() < 1e-14);
    }
}

#[test]
fn eigensolver_against_jacobi() {
    let s = BsOperatorSpec {
        grid: GridOptions { nodes_per_panel: 4, base_panels: 3, ..GridOptions::default() },
        ..spec(KernelKind::N, 0.7, 0.1, InteractionModel::gaussian(1.0, 1.0))
    };
    let m = build_bs_matrix(&s).unwrap();
    let n = m.nrows();
    let flat: Vec<f64> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m[(i, j)]).collect();
    let ev = common::jacobi_eigenvalues(flat, n);
    assert!((top_eigenvalue(&m).unwrap() - ev[n - 1]).abs() < 1e-12);
    assert!((bottom_eigenvalue(&m).unwrap() - ev[0]).abs() < 1e-12);
}

#[test]
fn discretizations_agree() {
    let model = InteractionModel::gaussian(1.0, 1.0);
    for t in [0.2, 0.02] {
        let kw = bs_top(&spec(KernelKind::N, 0.5, t, model)).unwrap();
        let graded = BsOperatorSpec {
            grid: GridOptions { discretization: Discretization::PlainGraded, nodes_per_panel: 24, ..GridOptions::default() },
            ..spec(KernelKind::N, 0.5, t, model)
        };
        let pg = bs_top(&graded).unwrap();
        assert!((kw - pg).abs() < 1e-6 * kw, "T={t}: {kw} vs {pg}");
    }
}

#[test]
fn refinement_is_small_at_low_temperature() {
    let s = spec(KernelKind::B, 1.0, 1e-4, InteractionModel::gaussian(1.0, 1.0));
    let r = solve_spectrum(&s).unwrap();
    assert!(r.refinement_delta < 1e-6 * r.top.max(1.0), "{r:?}");
}

#[test]
fn kernel_k_rejects_nonzero_momentum() {
    let s = spec(KernelKind::K, 0.1, 0.1, InteractionModel::gaussian(1.0, 1.0));
    assert!(matches!(bs_top(&s), Err(Error::Precondition(_))));
}

#[test]
fn sup_dominates_every_scan_point() {
    let model = InteractionModel::from_sign_targets(1.0, 0.5, 2.0, -0.8, 1.0).unwrap();
    let params = PhysParams::new(1.0, 0.02, 1);
    let r = sup_over_q(KernelKind::N, &params, &model, Sector::Symmetric, &GridOptions::default(), &SupOptions::default()).unwrap();
    for q in [0.0, 0.5, 1.0, 1.5, 3.0] {
        let v = bs_top(&BsOperatorSpec { params, ..spec(KernelKind::N, q, 0.02, model) }).unwrap();
        assert!(v <= r.value * (1.0 + 1e-12), "q={q}: {v} > {}", r.value);
    }
    assert!(!r.boundary_warning);
}

#[test]
fn sup_rejects_kernel_k() {
    let params = PhysParams::new(1.0, 0.1, 1);
    let r = sup_over_q(KernelKind::K, &params, &InteractionModel::gaussian(1.0, 1.0), Sector::Symmetric, &GridOptions::default(), &SupOptions::default());
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn kernel_weighted_rule_reproduces_moments() {
    // weight e^{-x} on [0, 2]: ∫ x^k e^{-x} dx for k < 2m is exact
    let w = |x: f64| (-x).exp();
    let rule = panel_rule(&w, 0.0, 2.0, &[], 6, 1e-12).unwrap();
    for k in 0..12 {
        let got: f64 = rule.nodes.iter().zip(&rule.weights).map(|(x, w)| x.powi(k) * w).sum();
        let want = common::simpson(&|x: f64| x.powi(k) * (-x).exp(), 0.0, 2.0, 1e-14);
        assert!((got - want).abs() < 1e-10 * want.max(1.0), "k={k}: {got} vs {want}");
    }
}

#[test]
fn radial_solver_is_two_dimensional() {
    let g = InteractionModel::gaussian(1.0, 1.0);
    let two = PhysParams::new(1.0, 0.1, 2);
    let r = radial::radial_top_k(&two, &g, &GridOptions::default(), 8).unwrap();
    assert!(r.top > 0.0 && r.channel.is_multiple_of(2));
    assert!(r.channel_tops.iter().all(|(_, v)| *v <= r.top));
    assert!(radial::radial_top_k(&PhysParams::new(1.0, 0.1, 1), &g, &GridOptions::default(), 8).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn b_spectrum_below_n_spectrum(q in 0.0..2.5f64, lt in -3.0..0.0f64) {
        // B ≤ N pointwise and V̂ ≥ 0, so the top eigenvalues are ordered
        let model = InteractionModel::gaussian(1.0, 1.0);
        let t = 10f64.powf(lt);
        let b = bs_top(&spec(KernelKind::B, q, t, model)).unwrap();
        let n = bs_top(&spec(KernelKind::N, q, t, model)).unwrap();
        prop_assert!(b <= n * (1.0 + 1e-9));
    }

    #[test]
    fn top_eigenvalue_decreases_with_temperature(lt in -3.0..0.0f64) {
        let model = InteractionModel::gaussian(1.0, 1.0);
        let t = 10f64.powf(lt);
        let lo = bs_top(&spec(KernelKind::K, 0.0, t, model)).unwrap();
        let hi = bs_top(&spec(KernelKind::K, 0.0, 1.5 * t, model)).unwrap();
        prop_assert!(hi < lo);
    }

    #[test]
    fn top_is_even_in_q(q in 0.01..2.5f64) {
        let model = InteractionModel::gaussian(1.0, 1.0);
        let a = bs_top(&spec(KernelKind::N, q, 0.05, model)).unwrap();
        let b = bs_top(&spec(KernelKind::N, -q, 0.05, model)).unwrap();
        prop_assert!((a - b).abs() < 1e-12 * a);
    }
}
