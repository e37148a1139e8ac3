//! Numerical bound checks. Pass suite names to run a subset:
//!
//! ```text
//! cargo run --release --example verify_bounds -- regions strong_coupling
//! ```

use bcs_tc_lab::bound_verifier::*;
use bcs_tc_lab::interactions::InteractionModel;

fn show(r: &BoundReport) {
    println!("{} {} (worst margin {:.3e}, C_emp {:?})", if r.pass { "PASS" } else { "FAIL" }, r.suite, r.worst_margin, r.c_emp);
    for c in &r.checks {
        println!("  [{}] {}: {}", if c.pass { "ok" } else { "!!" }, c.name, c.detail);
    }
}

fn main() -> bcs_tc_lab::Result<()> {
    let wanted: Vec<String> = std::env::args().skip(1).collect();
    let run = |name: &str| wanted.is_empty() || wanted.iter().any(|w| w == name);
    let g = InteractionModel::gaussian(1.0, 1.0);
    if run("weighted_integrals") {
        show(&verify_weighted_integrals(&WeightedIntegralOptions::new(1.0))?);
    }
    if run("log_bounds") {
        show(&verify_log_bounds(&LogBoundOptions::new(1.0))?);
    }
    if run("regions") {
        for dim in [2, 3] {
            show(&verify_region_bounds(&RegionOptions::new(1.0, dim, 0.3))?);
        }
    }
    if run("strong_coupling") {
        show(&verify_strong_coupling(&StrongCouplingOptions::default())?);
    }
    if run("chain") {
        show(&verify_chain(&g, 1.0, &[1.0, 0.5], &ChainOptions::default())?);
    }
    if run("approximants") {
        for which in [Approximant::Q, Approximant::W] {
            show(&verify_approximants(&ApproximantOptions::new(which, &g, 1.0))?);
        }
    }
    Ok(())
}
