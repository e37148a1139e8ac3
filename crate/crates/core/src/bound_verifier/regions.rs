//! Boundedness of `∫ M(p, q) χ_{A_j}(p) dp` in two and three dimensions for `|q| ≥ ε`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{uniform, BoundReport};
use crate::error::{Error, Result};
use crate::quadrature::regions::{a1_envelope_ratio, a2_cap, region_integral_m, Region, RegionSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionOptions {
    pub mu: f64,
    pub dim: usize,
    pub eps: f64,
    /// Momenta in `[ε, 4√μ]`.
    pub qs: Vec<f64>,
    pub tol: f64,
}

impl RegionOptions {
    pub fn new(mu: f64, dim: usize, eps: f64) -> Self {
        let s = mu.sqrt();
        let mut qs = uniform(eps, 4.0 * s, 16);
        qs.extend([s, s * (1.0 - 1e-3), s * (1.0 + 1e-3)]);
        qs.retain(|q| *q >= eps);
        qs.sort_by(f64::total_cmp);
        qs.dedup();
        Self { mu, dim, eps, qs, tol: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionRow {
    pub q: f64,
    pub a2: f64,
    pub a2_refined: f64,
    pub a3: f64,
    pub a3_refined: f64,
    pub cap: f64,
    pub a1_envelope_ratio: f64,
}

/// Values and explicit caps on `A₂`, finiteness of `A₃`, the `1/(1+p²)`
/// envelope on `A₁`, and 1 % stability when the tolerance tightens 100×.
pub fn region_rows(opts: &RegionOptions) -> Result<Vec<RegionRow>> {
    if opts.dim != 2 && opts.dim != 3 {
        return Err(Error::Domain(format!("regions are defined for d ∈ {{2, 3}}, got {}", opts.dim)));
    }
    if let Some(q) = opts.qs.iter().find(|q| **q < opts.eps) {
        return Err(Error::Precondition(format!("q = {q} below eps = {}", opts.eps)));
    }
    let (mu, dim, eps) = (opts.mu, opts.dim, opts.eps);
    let rows: Vec<Result<RegionRow>> = opts
        .qs
        .par_iter()
        .map(|&q| {
            let val = |region, tol| region_integral_m(&RegionSpec { dim, region, q }, mu, eps, tol).map(|r| r.value);
            Ok(RegionRow {
                q,
                a2: val(Region::A2, opts.tol)?,
                a2_refined: val(Region::A2, 1e-2 * opts.tol)?,
                a3: val(Region::A3, opts.tol)?,
                a3_refined: val(Region::A3, 1e-2 * opts.tol)?,
                cap: a2_cap(dim, q, mu, eps).unwrap_or(f64::INFINITY),
                a1_envelope_ratio: a1_envelope_ratio(dim, q, mu, 12.0 * mu.sqrt().max(1.0), 80)?,
            })
        })
        .collect();
    rows.into_iter().collect()
}

pub fn verify_region_bounds(opts: &RegionOptions) -> Result<BoundReport> {
    let rows = region_rows(opts)?;
    let mut report = BoundReport::new(
        "regions",
        format!("d={}, mu={}, eps={}, {} momenta in [{}, {}], tol={:e}",
            opts.dim, opts.mu, opts.eps, rows.len(),
            opts.qs.first().copied().unwrap_or(0.0), opts.qs.last().copied().unwrap_or(0.0), opts.tol),
    );
    let mut worst_a2 = f64::INFINITY;
    let mut worst_stab = 0.0f64;
    let mut all_finite = true;
    let mut worst_env = 0.0f64;
    for r in &rows {
        worst_a2 = worst_a2.min(r.cap - r.a2_refined);
        worst_stab = worst_stab
            .max((r.a2 - r.a2_refined).abs() / r.a2_refined.abs().max(1e-300))
            .max((r.a3 - r.a3_refined).abs() / r.a3_refined.abs().max(1e-300));
        all_finite &= [r.a2, r.a3, r.a2_refined, r.a3_refined].iter().all(|v| v.is_finite());
        worst_env = worst_env.max(r.a1_envelope_ratio);
        report.margin(r.cap - r.a2_refined);
    }
    report.c_emp = Some(rows.iter().map(|r| r.a3_refined).fold(0.0, f64::max));
    report.check("a2_a3_finite", all_finite, format!("{} momenta", rows.len()));
    report.check("a2_below_explicit_cap", worst_a2 >= 0.0, format!("min(cap − A2) = {worst_a2:.6}"));
    report.check("refinement_within_1_percent", worst_stab < 0.01, format!("max relative change {worst_stab:.3e}"));
    report.check("a1_envelope", worst_env <= 1.0, format!("max M(1+p²)/C on A1 = {worst_env:.6}"));
    Ok(report.finish())
}
