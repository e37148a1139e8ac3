//! Interaction models, their transforms and the Fermi-sphere operator that
//! sets the weak-coupling exponents.
//!
//! ```text
//! cargo run --release --example sphere_spectrum
//! ```

use bcs_tc_lab::interactions::{sphere_operator_spectrum, validate_assumption1, InteractionModel};

fn main() -> bcs_tc_lab::Result<()> {
    let mu = 1.0;
    let models = [
        InteractionModel::gaussian(1.0, 1.0),
        InteractionModel::from_sign_targets(1.0, 0.5, 2.0, -0.8, mu)?,
        InteractionModel::square_well(1.0, 1.0),
        InteractionModel::delta(1.0),
    ];
    for m in &models {
        let s = sphere_operator_spectrum(m, mu, 1)?;
        println!(
            "{:<20} V̂(0) = {:+.4}  V̂(2√μ) = {:+.4}  e_s = {:.4}  e_a = {:.4}  slopes: T_l {:.4}, T_u {:.4}",
            m.name(),
            m.v_hat(0.0, 1),
            m.v_hat(2.0 * mu.sqrt(), 1),
            s.e_s,
            s.e_a,
            s.slope_lower(),
            s.slope_upper()
        );
    }

    let g = InteractionModel::gaussian(1.0, 1.0);
    for dim in [2, 3] {
        let s = sphere_operator_spectrum(&g, mu, dim)?;
        println!("gaussian d={dim}: e_s = {:.6}, e_a = {:.6}, first modes {:.5?}", s.e_s, s.e_a, &s.modes[..4]);
    }

    let r = validate_assumption1(&InteractionModel::delta(1.0), 3);
    println!("delta in d=3 admissible: {}", r.pass);
    for c in r.checks.iter().filter(|c| !c.pass) {
        println!("  {}: {}", c.name, c.detail);
    }
    Ok(())
}
