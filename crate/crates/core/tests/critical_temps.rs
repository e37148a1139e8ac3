mod common;

use std::f64::consts::PI;

use bcs_tc_lab::critical_temps::*;
use bcs_tc_lab::interactions::InteractionModel;
use bcs_tc_lab::kernels::PhysParams;
use bcs_tc_lab::Error;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

/// Root of `(λ/2π) I(T) = 1` by bisection on the Simpson oracle.
fn delta_oracle(lambda: f64) -> f64 {
    let (mut lo, mut hi) = (1e-4f64, 10.0f64);
    while (hi / lo).ln() > 1e-11 {
        let mid = (lo * hi).sqrt();
        if lambda * common::rank_one_integral(1.0, mid) / (2.0 * PI) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo * hi).sqrt()
}

#[test]
fn delta_critical_temperature_against_oracle() {
    // frozen from the oracle above
    let frozen = [(0.5, 0.008_469_343_781_048_187), (1.0, 0.190_664_130_577_030_1), (2.0, 0.864_228_136_508_079_1)];
    for (lambda, t) in frozen {
        let oracle = delta_oracle(lambda);
        assert!(rel(oracle, t) < 1e-8, "oracle drifted: {oracle} vs {t}");
        let short = delta_rank_one_tc0(1.0, lambda, 1.0, 1e-10).unwrap();
        assert!(rel(short.temp, t) < 1e-8, "λ={lambda}: {} vs {t}", short.temp);
        assert!(short.monotone);
    }
}

#[test]
fn gaussian_tc0_frozen() {
    let r = solve(&SolveSpec { rel_tol: 1e-10, ..SolveSpec::new(0.5, Target::Tc0, 1.0, InteractionModel::gaussian(1.0, 1.0)) })
        .unwrap();
    assert!(rel(r.temp, 0.031_708_574) < 1e-6, "{}", r.temp);
    assert!(r.residual < 1e-6 && r.monotone);
    assert!(r.refinement_delta < 1e-6);
}

#[test]
fn scaling_amplitude_equals_scaling_coupling() {
    let g = InteractionModel::gaussian(1.0, 1.0);
    let g2 = InteractionModel::gaussian(2.0, 1.0);
    let a = solve(&SolveSpec::new(0.5, Target::Tc0, 1.0, g2)).unwrap().temp;
    let b = solve(&SolveSpec::new(1.0, Target::Tc0, 1.0, g)).unwrap().temp;
    assert!(rel(a, b) < 2e-6);
}

#[test]
fn stronger_coupling_raises_tc0() {
    let g = InteractionModel::gaussian(1.0, 1.0);
    let t: Vec<f64> = [0.4, 0.6, 0.9].iter().map(|&l| solve(&SolveSpec::new(l, Target::Tc0, 1.0, g)).unwrap().temp).collect();
    assert!(t[0] < t[1] && t[1] < t[2]);
}

#[test]
fn lower_below_upper_for_sign_changing_interaction() {
    let m = InteractionModel::from_sign_targets(1.0, 0.5, 2.0, -0.8, 1.0).unwrap();
    let base = SolveSpec::new(0.5, Target::Tc0, 1.0, m);
    let tl = solve_tl(&base).unwrap();
    let tu = solve_tu(&base).unwrap();
    let tc0 = solve_tc0(&base).unwrap();
    assert!(tl.temp <= tc0.temp * (1.0 + 1e-6) && tc0.temp <= tu.temp * (1.0 + 1e-6));
    assert!(tu.temp > 1.5 * tl.temp);
    assert!(tu.q_star.unwrap() > 0.0);
}

#[test]
fn validation_errors() {
    let g = InteractionModel::gaussian(1.0, 1.0);
    assert!(matches!(solve(&SolveSpec::new(-1.0, Target::Tc0, 1.0, g)), Err(Error::Domain(_))));
    assert!(matches!(solve(&SolveSpec::new(1.0, Target::Tc0, -1.0, g)), Err(Error::Precondition(_))));
    let two = SolveSpec { params: PhysParams::new(1.0, 1.0, 2), ..SolveSpec::new(1.0, Target::Tl, 1.0, g) };
    assert!(matches!(solve(&two), Err(Error::Domain(_))));
    let three = SolveSpec { params: PhysParams::new(1.0, 1.0, 3), ..SolveSpec::new(1.0, Target::Tc0, 1.0, g) };
    assert!(solve(&three).is_err());
}

#[test]
fn vanishing_interaction_has_no_root() {
    let r = solve(&SolveSpec::new(1.0, Target::Tc0, 1.0, InteractionModel::gaussian(1e-30, 1.0)));
    assert!(matches!(r, Err(Error::NoRoot { .. })), "{r:?}");
}

#[test]
fn two_dimensional_tc0_is_monotone_in_coupling() {
    let g = InteractionModel::gaussian(1.0, 1.0);
    let base = SolveSpec { params: PhysParams::new(1.0, 1.0, 2), ..SolveSpec::new(1.0, Target::Tc0, 1.0, g) };
    let a = solve(&SolveSpec { lambda: 2.0, ..base }).unwrap().temp;
    let b = solve(&SolveSpec { lambda: 3.0, ..base }).unwrap().temp;
    assert!(a < b);
}

#[test]
fn sweep_fit_recovers_exact_exponential() {
    let records: Vec<SweepRecord> = DEFAULT_LAMBDAS
        .iter()
        .map(|&l| SweepRecord { lambda: l, temp: (-(1.7 / l + 0.3)).exp(), ln_ratio: 1.7 / l + 0.3, q_star: None })
        .collect();
    let fit = fit_slope(&records).unwrap();
    assert!((fit.slope - 1.7).abs() < 1e-12 && (fit.intercept - 0.3).abs() < 1e-12);
    assert_eq!(fit.lambdas, vec![0.24, 0.27, 0.31, 0.36]);
}

#[test]
fn sweep_keeps_coupling_order() {
    let base = SolveSpec::new(1.0, Target::Tc0, 1.0, InteractionModel::delta(1.0));
    let ls = [2.0, 1.5, 1.0, 0.8];
    let s = weak_coupling_sweep(&ls, &base).unwrap();
    assert_eq!(s.records.iter().map(|r| r.lambda).collect::<Vec<_>>(), ls.to_vec());
    assert!(s.records.windows(2).all(|w| w[1].temp < w[0].temp));
}

#[test]
fn target_names() {
    assert_eq!(Target::parse("TL"), Some(Target::Tl));
    assert_eq!(Target::parse("tc"), Some(Target::Tc0));
    assert_eq!(Target::parse("x"), None);
    assert_eq!(serde_json::to_string(&Target::Tu).unwrap(), "\"tu\"");
}
