use bcs_tc_lab::bound_verifier::chain::chain_values;
use bcs_tc_lab::bound_verifier::log_bounds::{log_term_fermi, log_term_zero};
use bcs_tc_lab::bound_verifier::strong_coupling::{derivative_envelope, hs_norm_squared, weyl_pair};
use bcs_tc_lab::bound_verifier::*;
use bcs_tc_lab::bs_spectra::{GridOptions, SupOptions};
use bcs_tc_lab::interactions::InteractionModel;
use bcs_tc_lab::kernels::PhysParams;
use bcs_tc_lab::Error;

#[test]
fn weighted_integrals_suite_passes() {
    let r = verify_weighted_integrals(&WeightedIntegralOptions::new(1.0)).unwrap();
    assert!(r.pass, "{:#?}", r.checks);
}

#[test]
fn log_bounds_suite_passes() {
    let r = verify_log_bounds(&LogBoundOptions::new(1.0)).unwrap();
    assert!(r.pass, "{:#?}", r.checks);
    assert!(r.c_emp.unwrap() > 0.0);
}

#[test]
fn log_terms_grow_like_their_coefficients() {
    let (a, b) = (log_term_zero(1e-4, 0.0, 1.0), log_term_zero(1e-6, 0.0, 1.0));
    assert!(b > a);
    assert!(log_term_fermi(1e-6, 1.0, 1.0) > log_term_fermi(1e-4, 1.0, 1.0));
}

#[test]
fn approximant_suites_pass() {
    let g = InteractionModel::gaussian(1.0, 1.0);
    for which in [Approximant::Q, Approximant::W] {
        let r = verify_approximants(&ApproximantOptions::new(which, &g, 1.0)).unwrap();
        assert!(r.pass, "{which:?}: {:#?}", r.checks);
    }
}

#[test]
fn region_suites_pass() {
    for dim in [2, 3] {
        let r = verify_region_bounds(&RegionOptions::new(1.0, dim, 0.3)).unwrap();
        assert!(r.pass && r.worst_margin > 0.0, "{:#?}", r.checks);
    }
    assert!(verify_region_bounds(&RegionOptions::new(1.0, 1, 0.3)).is_err());
}

#[test]
fn strong_coupling_values_frozen() {
    let v = strong_coupling::strong_coupling_values(&StrongCouplingOptions::default()).unwrap();
    let frozen_hs = [0.0994, 0.0409, 0.0207, 0.0104, 0.00208];
    for (got, want) in v.hs.iter().zip(frozen_hs) {
        assert!((got - want).abs() < 1e-2 * want, "{got} vs {want}");
    }
    assert!(v.sup_integral.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn hilbert_schmidt_norm_converges_in_nodes() {
    let (a, _) = hs_norm_squared(0.1, 10.0, 16);
    let (b, _) = hs_norm_squared(0.1, 10.0, 24);
    assert!((a - b).abs() < 1e-8 * b);
}

#[test]
fn weyl_samples_stay_in_the_box() {
    for i in 0..1000 {
        let (x, y) = weyl_pair(i, 50.0);
        assert!(x.abs() <= 50.0 && y.abs() <= 50.0);
    }
    assert_eq!(derivative_envelope(1.0), 0.25);
    assert_eq!(derivative_envelope(3.0), 0.25);
    assert!(derivative_envelope(5.0) < 0.25);
}

#[test]
fn chain_ordering_for_gaussian() {
    let g = InteractionModel::gaussian(1.0, 1.0);
    let c = chain_values(&g, 1.0, 1.0, &ChainOptions::default()).unwrap();
    let [a1, a2, a3, a4] = c.values();
    let tol = 1e-4 * 2.0 * c.tc0;
    assert!(a1 + 1e-12 >= a2 && a2 + 1e-12 >= a3 && a3 + tol >= a4, "{c:?}");
    assert!(a1.abs() <= tol);
    assert!((c.tc0 - 0.277_215_083).abs() < 1e-6);
}

#[test]
fn chain_rejects_sign_changing_transform() {
    let gd = InteractionModel::from_sign_targets(1.0, 0.5, 2.0, -0.8, 1.0).unwrap();
    assert!(matches!(chain_values(&gd, 1.0, 1.0, &ChainOptions::default()), Err(Error::Precondition(_))));
}

#[test]
fn gap_is_nonnegative_for_positive_potential() {
    let g = InteractionModel::gaussian(1.0, 1.0);
    let p = PhysParams::new(1.0, 0.05, 1);
    let e = e_gap(&p, 0.0, &g, &GridOptions::default(), &SupOptions::default()).unwrap();
    assert!(e >= -1e-12, "{e}");
}

#[test]
fn reports_serialize() {
    let r = verify_weighted_integrals(&WeightedIntegralOptions::new(1.0)).unwrap();
    let s = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<BoundReport>(&s).unwrap(), r);
}
