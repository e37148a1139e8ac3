//! Weighted integrals of `M` that stay bounded near the two singular momenta.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{refine, rel_change, uniform, BoundReport};
use crate::error::Result;
use crate::quadrature::integrals::{weighted_m_integral, MWeight};
use crate::quadrature::panel::{integrate_interval, PanelScheme};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedIntegralOptions {
    pub mu: f64,
    /// Number of sample momenta in each admissible range.
    pub n_q: usize,
    pub tol: f64,
}

impl WeightedIntegralOptions {
    pub fn new(mu: f64) -> Self {
        Self { mu, n_q: 41, tol: 1e-10 }
    }
}

/// Momenta in `[lo, hi]`, uniform plus logarithmic clustering toward `centre`.
fn samples(lo: f64, hi: f64, centre: f64, n: usize) -> Vec<f64> {
    let mut q = uniform(lo, hi, n);
    let span = (hi - lo).abs();
    for k in 1..=8 {
        let d = span * 10f64.powi(-k);
        for c in [centre - d, centre + d] {
            if c >= lo && c <= hi {
                q.push(c);
            }
        }
    }
    q.sort_by(f64::total_cmp);
    q.dedup();
    q
}

fn sup_over(qs: &[f64], mu: f64, weight: MWeight, scheme: &PanelScheme) -> Result<f64> {
    let vals: Vec<Result<f64>> =
        qs.par_iter().map(|&q| weighted_m_integral(q, mu, weight, scheme).map(|r| r.value)).collect();
    let mut best = f64::NEG_INFINITY;
    for v in vals {
        best = best.max(v?);
    }
    Ok(best)
}

/// `∫_{√μ−q}^{√μ+q} |p − √μ| / (2pq) dp`, the piece across the shell.
pub fn middle_piece(q: f64, mu: f64, tol: f64) -> Result<f64> {
    let s = mu.sqrt();
    Ok(integrate_interval(|p| (p - s).abs() / (2.0 * p * q), s - q, s + q, &[s], tol, tol)?.value)
}

/// Suprema over both admissible ranges, their stability under refinement, and
/// the unit bound on the piece across the shell.
pub fn verify_weighted_integrals(opts: &WeightedIntegralOptions) -> Result<BoundReport> {
    let mu = opts.mu;
    let s = mu.sqrt();
    let scheme = PanelScheme::default().with_tol(opts.tol, opts.tol);
    let mut report = BoundReport::new(
        "weighted_integrals",
        format!("mu={mu}, {} momenta per range plus clustering, tol={:e}", opts.n_q, opts.tol),
    );
    let qa = samples(0.0, 0.5 * s, 0.0, opts.n_q);
    let qb = samples(0.5 * s, 1.5 * s, s, opts.n_q);
    let mut sups = Vec::new();
    for (name, qs, w) in [
        ("shell_weight", &qa, MWeight::AbsPMinusSqrtMu),
        ("centre_weight", &qb, MWeight::AbsP),
    ] {
        let a = sup_over(qs, mu, w, &scheme)?;
        let b = sup_over(&refine(qs), mu, w, &scheme)?;
        let d = rel_change(a, b, 1.0);
        report.check(
            &format!("{name}_sup_stable"),
            a.is_finite() && d < 0.1,
            format!("sup = {a:.8} -> {b:.8} under refinement (relative change {d:.3e})"),
        );
        sups.push(b);
    }
    report.c_emp = Some(sups.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    for &q in qa.iter().filter(|q| **q > 0.0) {
        let v = middle_piece(q, mu, opts.tol)?;
        report.margin(1.0 - v);
    }
    let worst = report.worst_margin;
    report.check("middle_piece_at_most_one", worst >= 0.0, format!("min over q of 1 − value = {worst:.6e}"));
    Ok(report.finish())
}
