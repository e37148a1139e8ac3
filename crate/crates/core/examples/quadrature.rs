//! Closed-form antiderivatives against panel quadrature, and the logarithmic
//! growth of the kernel integrals as `T → 0`.
//!
//! ```text
//! cargo run --release --example quadrature
//! ```

use bcs_tc_lab::kernels::PhysParams;
use bcs_tc_lab::quadrature::integrals::integrate_m_t;
use bcs_tc_lab::quadrature::oracles::branch_covering_points;
use bcs_tc_lab::quadrature::{integrate_n_t, PanelScheme};

fn main() -> bcs_tc_lab::Result<()> {
    for c in branch_covering_points() {
        let (exact, quad) = (c.evaluate()?, c.quadrature(1e-12)?);
        println!("{:>+.12} {:>9.1e}  {c:?}", exact, (exact - quad).abs());
    }

    println!("\n{:>8} {:>10} {:>12} {:>12} {:>10}", "T/μ", "ln(μ/T)", "n_T(0)", "n_T(√μ)", "m_T(√μ)");
    let scheme = PanelScheme::default();
    for k in 2..=6 {
        let t = 10f64.powi(-k);
        let p = PhysParams::new(1.0, t, 1);
        println!(
            "{t:>8.0e} {:>10.4} {:>12.6} {:>12.6} {:>10.6}",
            (1.0 / t).ln(),
            integrate_n_t(0.0, &p, &scheme)?.value,
            integrate_n_t(1.0, &p, &scheme)?.value,
            integrate_m_t(1.0, &p, &scheme)?.value
        );
    }
    Ok(())
}
