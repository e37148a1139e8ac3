//! Sweep the coupling, fit `ln(μ/T) = s/λ + c` and compare with the
//! Fermi-sphere prediction. Takes about a minute on one core.
//!
//! ```text
//! cargo run --release --example weak_coupling_sweep
//! ```

use bcs_tc_lab::critical_temps::{weak_coupling_sweep, SolveSpec, Target, DEFAULT_LAMBDAS};
use bcs_tc_lab::interactions::InteractionModel;

fn main() -> bcs_tc_lab::Result<()> {
    let model = InteractionModel::from_sign_targets(1.0, 0.5, 2.0, -0.8, 1.0)?;
    let mut temps = Vec::new();
    for target in [Target::Tl, Target::Tu] {
        let s = weak_coupling_sweep(&DEFAULT_LAMBDAS, &SolveSpec::new(1.0, target, 1.0, model))?;
        println!("{}: slope {:.5} (predicted {:.5}), R² {:.6}", target.as_str(), s.fit.slope, s.predicted_slope.unwrap(), s.fit.r_squared);
        for r in &s.records {
            println!("  λ = {:<5} T = {:.6e}  ln(μ/T) = {:.4}  q* = {:?}", r.lambda, r.temp, r.ln_ratio, r.q_star);
        }
        temps.push(s.records.iter().map(|r| r.temp).collect::<Vec<_>>());
    }
    let ratios: Vec<f64> = temps[0].iter().zip(&temps[1]).map(|(l, u)| u / l).collect();
    println!("T_u/T_l: {ratios:.4?}");
    Ok(())
}
