//! Top Birman–Schwinger eigenvalue as a function of total momentum, and its
//! supremum over `q`.
//!
//! ```text
//! cargo run --release --example bs_spectrum
//! ```

use bcs_tc_lab::bs_spectra::{solve_spectrum, sup_over_q, BsOperatorSpec, GridOptions, KernelKind, Sector, SupOptions};
use bcs_tc_lab::interactions::InteractionModel;
use bcs_tc_lab::kernels::PhysParams;

fn main() -> bcs_tc_lab::Result<()> {
    let model = InteractionModel::from_sign_targets(1.0, 0.5, 2.0, -0.8, 1.0)?;
    let params = PhysParams::new(1.0, 0.02, 1);
    let grid = GridOptions::default();
    println!("{:>6} {:>12} {:>12} {:>10}", "q", "top(B)", "top(N)", "Δrefine");
    for i in 0..=12 {
        let q = 0.25 * i as f64;
        let spec = |kernel| BsOperatorSpec { kernel, q, sector: Sector::Symmetric, params, interaction: model, grid };
        let b = solve_spectrum(&spec(KernelKind::B))?;
        let n = solve_spectrum(&spec(KernelKind::N))?;
        println!("{q:>6.2} {:>12.6} {:>12.6} {:>10.1e}", b.top, n.top, n.refinement_delta);
    }
    for kernel in [KernelKind::B, KernelKind::N] {
        let s = sup_over_q(kernel, &params, &model, Sector::Symmetric, &grid, &SupOptions::default())?;
        println!("sup over q of top({kernel:?}) = {:.8} at q* = {:.6} ({} evaluations)", s.value, s.q_star, s.evaluations);
    }
    Ok(())
}
