//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line and then
//! asserts. Runtime limits are part of each criterion and count toward the verdict.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bcs_tc_lab::bound_verifier::{
    singularity_fit, verify_chain, verify_region_bounds, verify_strong_coupling, ChainOptions, RegionOptions,
    StrongCouplingOptions, StrongCouplingValues,
};
use bcs_tc_lab::bs_spectra::{build_bs_matrix, top_eigenvalue, BsOperatorSpec, KernelKind, Sector};
use bcs_tc_lab::critical_temps::{
    delta_rank_one_tc0, solve, weak_coupling_sweep, SolveSpec, Target, DEFAULT_LAMBDAS,
};
use bcs_tc_lab::interactions::{sphere_operator_spectrum, InteractionModel};
use bcs_tc_lab::kernels::{b_t, k_t, m_bound, n_t, PhysParams};
use bcs_tc_lab::quadrature::oracles::branch_covering_points;

fn verdict(id: u32, name: &str, pass: bool, elapsed: Duration, limit: Option<Duration>, detail: &str) {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let ok = pass && in_time;
    let limit = limit.map(|l| format!(" / limit {:.0?}", l)).unwrap_or_default();
    println!(
        "criterion {id:>2} {name}: {} ({:.2?}{limit}) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(pass, "criterion {id} failed: {detail}");
    assert!(in_time, "criterion {id} exceeded its runtime limit ({elapsed:.2?})");
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn gaussian_difference() -> InteractionModel {
    InteractionModel::from_sign_targets(1.0, 0.5, 2.0, -0.8, 1.0).unwrap()
}

#[test]
fn c01_kernel_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let slack = 1e-12;
    let mut worst_ratio = 0.0f64;
    let mut failures = Vec::new();
    for i in 0..10_000 {
        let mu = rng.gen_range(0.1..4.0);
        let temp = 10f64.powf(rng.gen_range(-5.0..1.0));
        let p = rng.gen_range(-4.0..4.0);
        let q = rng.gen_range(-4.0..4.0);
        let params = PhysParams::new(mu, temp, 1);
        let b = b_t(p, q, &params);
        let n = n_t(p, q, &params);
        let m = m_bound(p, q, mu).value();
        let d = (p * p + q * q - mu).abs();
        let cap = (0.5 / temp).min(m);
        let ok = b <= n * (1.0 + slack) && n <= cap * (1.0 + slack) && (d == 0.0 || m <= (1.0 + slack) / d);
        if !ok {
            failures.push(format!("#{i} p={p} q={q} T={temp} mu={mu}: B={b} N={n} M={m}"));
        }
        let n0 = n_t(p, 0.0, &params);
        worst_ratio = worst_ratio.max((n0 * k_t(p, &params) - 1.0).abs());
    }
    let pass = failures.is_empty() && worst_ratio <= 1e-12;
    let detail = format!("ordering violations {}, max |N·K − 1| = {worst_ratio:.2e} {:?}", failures.len(), failures.first());
    verdict(1, "kernel identities", pass, start.elapsed(), Some(Duration::from_secs(1)), &detail);
}

#[test]
fn c02_zero_momentum_reduction() {
    let start = Instant::now();
    let models = [InteractionModel::gaussian(1.0, 1.0), gaussian_difference(), InteractionModel::delta(1.0)];
    let mut mismatches = 0;
    let mut worst_top = 0.0f64;
    for model in models {
        for temp in [0.3, 1e-2, 1e-4] {
            let spec = |kernel| BsOperatorSpec {
                kernel,
                q: 0.0,
                sector: Sector::Symmetric,
                params: PhysParams::new(1.0, temp, 1),
                interaction: model,
                grid: Default::default(),
            };
            let k = build_bs_matrix(&spec(KernelKind::K)).unwrap();
            let b = build_bs_matrix(&spec(KernelKind::B)).unwrap();
            let n = build_bs_matrix(&spec(KernelKind::N)).unwrap();
            if k != b || k != n {
                mismatches += 1;
            }
            let tk = top_eigenvalue(&k).unwrap();
            worst_top = worst_top.max(rel(tk, top_eigenvalue(&b).unwrap())).max(rel(tk, top_eigenvalue(&n).unwrap()));
        }
    }
    let pass = mismatches == 0 && worst_top <= 1e-12;
    let detail = format!("matrices differing {mismatches}/9, max top-eigenvalue spread {worst_top:.1e}");
    verdict(2, "q = 0 reduction", pass, start.elapsed(), Some(Duration::from_secs(1)), &detail);
}

#[test]
fn c03_closed_form_oracles() {
    let start = Instant::now();
    let points = branch_covering_points();
    let mut worst = 0.0f64;
    let mut failed = Vec::new();
    for p in &points {
        let exact = p.evaluate().unwrap();
        let quad = p.quadrature(1e-12).unwrap();
        let err = (exact - quad).abs() / exact.abs().max(1.0);
        worst = worst.max(err);
        if err > 1e-8 {
            failed.push(format!("{p:?}: {exact} vs {quad}"));
        }
    }
    let pass = points.len() == 20 && failed.is_empty();
    let detail = format!("{} points, max deviation {worst:.1e} {:?}", points.len(), failed.first());
    verdict(3, "closed-form oracles", pass, start.elapsed(), Some(Duration::from_secs(5)), &detail);
}

#[test]
fn c04_singularity_coefficients() {
    let start = Instant::now();
    let temps: Vec<f64> = (0..=8).map(|i| 10f64.powf(-6.0 + 0.5 * i as f64)).collect();
    let fit = singularity_fit(1.0, &temps, 1e-9).unwrap();
    let pass = (fit.slope_zero - 1.0).abs() <= 0.05 && (fit.slope_fermi - 0.5).abs() <= 0.05 && fit.m_fermi_ratio < 3.0;
    let detail = format!(
        "slopes {:.5} (1 ± 0.05), {:.5} (0.5 ± 0.05); m ratio {:.5} (< 3)",
        fit.slope_zero, fit.slope_fermi, fit.m_fermi_ratio
    );
    verdict(4, "singularity coefficients", pass, start.elapsed(), Some(Duration::from_secs(30)), &detail);
}

#[test]
fn c05_unique_critical_temperature() {
    let start = Instant::now();
    let model = InteractionModel::gaussian(1.0, 1.0);
    let mut worst = 0.0f64;
    let mut temps = Vec::new();
    for lambda in [1.0, 0.5] {
        let t: Vec<f64> = [Target::Tl, Target::Tu, Target::Tc0]
            .iter()
            .map(|&target| solve(&SolveSpec::new(lambda, target, 1.0, model)).unwrap().temp)
            .collect();
        worst = worst.max(rel(t[0], t[1])).max(rel(t[0], t[2])).max(rel(t[1], t[2]));
        temps.push((lambda, t));
    }
    let chain = verify_chain(&model, 1.0, &[1.0, 0.5], &ChainOptions::default()).unwrap();
    let pass = worst <= 1e-3 && chain.pass;
    let detail = format!("max pairwise spread {worst:.1e} (≤ 1e-3), chain {}; (λ, [Tl, Tu, Tc0]) = {temps:?}", chain.pass);
    verdict(5, "unique critical temperature", pass, start.elapsed(), Some(Duration::from_secs(120)), &detail);
}

#[test]
fn c06_split_weak_coupling_slopes() {
    let start = Instant::now();
    let model = gaussian_difference();
    assert!(model.v_hat(0.0, 1) > 0.0 && model.v_hat(2.0, 1) < 0.0);
    let sphere = sphere_operator_spectrum(&model, 1.0, 1).unwrap();
    let want_l = 1.0 / sphere.e_s;
    let want_u = 1.0 / (0.5 * sphere.e0_s.unwrap());
    let lower = weak_coupling_sweep(&DEFAULT_LAMBDAS, &SolveSpec::new(1.0, Target::Tl, 1.0, model)).unwrap();
    let upper = weak_coupling_sweep(&DEFAULT_LAMBDAS, &SolveSpec::new(1.0, Target::Tu, 1.0, model)).unwrap();
    let (s_l, s_u) = (lower.fit.slope, upper.fit.slope);
    let complete = lower.records.len() == DEFAULT_LAMBDAS.len() && upper.records.len() == DEFAULT_LAMBDAS.len();
    // records follow the coupling order given, which is decreasing
    let ratios: Vec<f64> = lower.records.iter().zip(&upper.records).map(|(l, u)| u.temp / l.temp).collect();
    let monotone = ratios.windows(2).all(|w| w[1] > w[0]);
    let pass = complete
        && rel(s_l, want_l) <= 0.15
        && rel(s_u, want_u) <= 0.15
        && s_u < s_l
        && monotone;
    let detail = format!(
        "s_Tl {s_l:.5} vs {want_l:.5} ({:.1}%), s_Tu {s_u:.5} vs {want_u:.5} ({:.1}%), Tu/Tl {ratios:.4?}",
        100.0 * rel(s_l, want_l),
        100.0 * rel(s_u, want_u)
    );
    verdict(6, "split weak-coupling slopes", pass, start.elapsed(), Some(Duration::from_secs(600)), &detail);
}

#[test]
fn c07_delta_rank_one() {
    let start = Instant::now();
    let model = InteractionModel::delta(1.0);
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for lambda in [0.5, 1.0, 2.0] {
        let short = delta_rank_one_tc0(1.0, lambda, 1.0, 1e-10).unwrap().temp;
        let full = solve(&SolveSpec { rel_tol: 1e-10, ..SolveSpec::new(lambda, Target::Tc0, 1.0, model) }).unwrap().temp;
        worst = worst.max(rel(short, full));
        rows.push((lambda, short, full));
    }
    let detail = format!("max relative gap {worst:.1e} (≤ 1e-5); (λ, rank-one, full) = {rows:?}");
    verdict(7, "delta rank-one consistency", worst <= 1e-5, start.elapsed(), Some(Duration::from_secs(30)), &detail);
}

#[test]
fn c08_region_bounds() {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for dim in [2, 3] {
        let r = verify_region_bounds(&RegionOptions::new(1.0, dim, 0.3)).unwrap();
        pass &= r.pass;
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        parts.push(format!("d={dim} pass={} margin={:.3} failed={failed:?}", r.pass, r.worst_margin));
    }
    verdict(8, "region bounds", pass, start.elapsed(), Some(Duration::from_secs(120)), &parts.join("; "));
}

#[test]
fn c09_strong_coupling() {
    let start = Instant::now();
    let opts = StrongCouplingOptions::default();
    let r = verify_strong_coupling(&opts).unwrap();
    let v: StrongCouplingValues = bcs_tc_lab::bound_verifier::strong_coupling::strong_coupling_values(&opts).unwrap();
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let detail = format!(
        "samples {}, HS {:.4?}, sup-integral {:.4?}, failed {failed:?}",
        opts.n_samples, v.hs, v.sup_integral
    );
    verdict(9, "strong-coupling lemmas", r.pass && opts.n_samples >= 10_000, start.elapsed(), Some(Duration::from_secs(120)), &detail);
}

fn determinism_specs() -> Vec<SolveSpec> {
    let gd = gaussian_difference();
    let g = InteractionModel::gaussian(1.0, 1.0);
    vec![
        SolveSpec::new(0.5, Target::Tc0, 1.0, gd),
        SolveSpec::new(0.5, Target::Tl, 1.0, gd),
        SolveSpec::new(0.5, Target::Tu, 1.0, gd),
        SolveSpec::new(0.5, Target::Tc0, 1.0, g),
        SolveSpec::new(1.0, Target::Tc0, 1.0, InteractionModel::delta(1.0)),
        SolveSpec { params: PhysParams::new(1.0, 1.0, 2), ..SolveSpec::new(1.0, Target::Tc0, 1.0, g) },
    ]
}

fn run_all(specs: &[SolveSpec]) -> String {
    let results: Vec<_> = specs.iter().map(|s| solve(s).unwrap()).collect();
    let sweep = weak_coupling_sweep(&[0.6, 0.5, 0.42, 0.36], &SolveSpec::new(1.0, Target::Tc0, 1.0, gaussian_difference()))
        .unwrap();
    serde_json::to_string(&(results, sweep)).unwrap()
}

#[test]
fn c10_determinism_and_convergence() {
    let start = Instant::now();
    let specs = determinism_specs();
    let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let first = pool(1).install(|| run_all(&specs));
    let again = pool(1).install(|| run_all(&specs));
    let wide = pool(4).install(|| run_all(&specs));
    let identical = first == again && first == wide;

    let mut worst = 0.0f64;
    for s in &specs {
        let coarse = solve(s).unwrap().temp;
        let fine = solve(&SolveSpec { grid: s.grid.doubled(), ..*s }).unwrap().temp;
        worst = worst.max(rel(coarse, fine));
    }
    let pass = identical && worst < 1e-5;
    let detail = format!("byte-identical across runs and 1/4 threads: {identical}; max grid-doubling change {worst:.1e} (< 1e-5)");
    verdict(10, "determinism and convergence", pass, start.elapsed(), None, &detail);
}
