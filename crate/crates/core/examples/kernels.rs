//! Pair kernels on a small grid, with the pointwise ordering `B ≤ N ≤ M`.
//!
//! ```text
//! cargo run --release --example kernels
//! ```

use bcs_tc_lab::kernels::{b_t, k_t, m_bound, n_t, PhysParams};

fn main() {
    let params = PhysParams::new(1.0, 0.05, 1);
    println!("{:>6} {:>6} {:>12} {:>12} {:>12} {:>12}", "p", "q", "1/K", "B", "N", "M");
    for q in [0.0, 0.5, 1.0] {
        for i in 0..=8 {
            let p = 0.25 * i as f64;
            let (b, n) = (b_t(p, q, &params), n_t(p, q, &params));
            let m = m_bound(p, q, params.mu).value();
            println!("{p:>6.2} {q:>6.2} {:>12.6} {b:>12.6} {n:>12.6} {m:>12.6}", 1.0 / k_t(p, &params));
            assert!(b <= n * (1.0 + 1e-12) && n <= m);
        }
    }

    // lower temperature sharpens the Fermi-point peak; N is capped at 1/(2T)
    for t in [1e-1, 1e-2, 1e-3, 1e-4] {
        let p = PhysParams::new(1.0, t, 1);
        println!("T = {t:.0e}: N(1, 0) = {:.1}, 1/(2T) = {:.1}", n_t(1.0, 0.0, &p), 0.5 / t);
    }
}
