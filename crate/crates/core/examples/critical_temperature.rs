//! `T_c⁰`, `T_l` and `T_u` for a non-negative and a sign-changing interaction,
//! and the scalar shortcut for a contact interaction.
//!
//! ```text
//! cargo run --release --example critical_temperature
//! ```

use bcs_tc_lab::critical_temps::{delta_rank_one_tc0, solve, SolveSpec, Target};
use bcs_tc_lab::interactions::InteractionModel;

fn main() -> bcs_tc_lab::Result<()> {
    let models = [
        InteractionModel::gaussian(1.0, 1.0),
        InteractionModel::from_sign_targets(1.0, 0.5, 2.0, -0.8, 1.0)?,
    ];
    for m in models {
        for target in [Target::Tl, Target::Tc0, Target::Tu] {
            let r = solve(&SolveSpec::new(0.5, target, 1.0, m))?;
            println!(
                "{:<20} {:<4} T = {:.8e}  q* = {:?}  residual {:.1e}  refinement {:.1e}",
                m.name(),
                target.as_str(),
                r.temp,
                r.q_star,
                r.residual,
                r.refinement_delta
            );
        }
    }

    // V = δ: the operator has rank one and the criterion reduces to a scalar integral
    for lambda in [0.5, 1.0, 2.0] {
        let short = delta_rank_one_tc0(1.0, lambda, 1.0, 1e-10)?;
        let full = solve(&SolveSpec { rel_tol: 1e-10, ..SolveSpec::new(lambda, Target::Tc0, 1.0, InteractionModel::delta(1.0)) })?;
        println!("delta λ = {lambda}: rank-one {:.10}  matrix {:.10}", short.temp, full.temp);
    }
    Ok(())
}
