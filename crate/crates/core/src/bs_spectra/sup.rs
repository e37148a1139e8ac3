//! Supremum of the top eigenvalue over total momentum: fixed scan plus golden section.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bs_top, BsOperatorSpec, GridOptions, KernelKind, Sector};
use crate::error::{Error, Result};
use crate::interactions::InteractionModel;
use crate::kernels::PhysParams;

/// Relative margin a candidate needs to displace the current best.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SupOptions {
    /// Upper end of the scan; `None` means `4√μ`.
    pub q_max: Option<f64>,
    /// Golden section stops once the bracket is narrower than `tol · √μ`.
    pub tol: f64,
    pub golden_iterations: usize,
}

impl Default for SupOptions {
    fn default() -> Self {
        Self { q_max: None, tol: 1e-8, golden_iterations: 48 }
    }
}

impl SupOptions {
    pub fn q_max_for(&self, mu: f64) -> f64 {
        self.q_max.unwrap_or(4.0 * mu.max(0.0).sqrt())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupResult {
    pub q_star: f64,
    pub value: f64,
    /// Maximiser sits on `q_max`; the window is probably too small.
    pub boundary_warning: bool,
    pub evaluations: usize,
}

/// The 64-point scan: 24 uniform points on `[0, q_max]`, 16 logarithmic offsets on each
/// side of `√μ` down to `10⁻⁸√μ`, `√μ` itself and 7 logarithmic points near `0`.
pub fn scan_points(mu: f64, q_max: f64) -> Vec<f64> {
    let s = mu.max(0.0).sqrt();
    let mut pts: Vec<f64> = (0..24).map(|i| q_max * i as f64 / 23.0).collect();
    for j in 1..=16 {
        let d = s * 10f64.powf(-0.5 * j as f64);
        pts.push(s - d);
        pts.push(s + d);
    }
    pts.push(s);
    pts.extend((1..=7).map(|k| s * 10f64.powi(-k)));
    pts.retain(|q| *q >= 0.0 && *q <= q_max);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn better(candidate: f64, best: f64, maximize: bool) -> bool {
    let margin = TIE_TOL * best.abs().max(f64::MIN_POSITIVE);
    if maximize {
        candidate > best + margin
    } else {
        candidate < best - margin
    }
}

/// Extremises `f` over `q ∈ [0, q_max]`. Scan values are computed in parallel and
/// reduced in index order; ties go to the smaller `q`.
pub fn optimize_over_q<F>(f: F, mu: f64, opts: &SupOptions, maximize: bool) -> Result<SupResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let q_max = opts.q_max_for(mu);
    if !(q_max > mu.max(0.0).sqrt()) {
        return Err(Error::Precondition(format!("q_max = {q_max} must exceed sqrt(mu)")));
    }
    let pts = scan_points(mu, q_max);
    let vals: Vec<Result<f64>> = pts.par_iter().map(|&q| f(q)).collect();
    let vals: Vec<f64> = vals.into_iter().collect::<Result<_>>()?;
    let mut evaluations = pts.len();
    let mut best_i = 0;
    for i in 1..vals.len() {
        if better(vals[i], vals[best_i], maximize) {
            best_i = i;
        }
    }
    let (mut q_star, mut best) = (pts[best_i], vals[best_i]);
    let mut lo = if best_i > 0 { pts[best_i - 1] } else { pts[0] };
    let mut hi = if best_i + 1 < pts.len() { pts[best_i + 1] } else { pts[best_i] };
    let invphi = 0.5 * (5f64.sqrt() - 1.0);
    let width_tol = opts.tol * mu.max(0.0).sqrt().max(f64::MIN_POSITIVE);
    let sgn = if maximize { 1.0 } else { -1.0 };
    let mut x1 = hi - invphi * (hi - lo);
    let mut x2 = lo + invphi * (hi - lo);
    let mut f1 = None;
    let mut f2 = None;
    for _ in 0..opts.golden_iterations {
        if hi - lo <= width_tol {
            break;
        }
        let v1 = match f1 {
            Some(v) => v,
            None => {
                let v = f(x1)?;
                evaluations += 1;
                if better(v, best, maximize) || (v == best && x1 < q_star) {
                    best = v;
                    q_star = x1;
                }
                v
            }
        };
        let v2 = match f2 {
            Some(v) => v,
            None => {
                let v = f(x2)?;
                evaluations += 1;
                if better(v, best, maximize) {
                    best = v;
                    q_star = x2;
                }
                v
            }
        };
        if sgn * v1 >= sgn * v2 {
            hi = x2;
            x2 = x1;
            f2 = Some(v1);
            x1 = hi - invphi * (hi - lo);
            f1 = None;
        } else {
            lo = x1;
            x1 = x2;
            f1 = Some(v2);
            x2 = lo + invphi * (hi - lo);
            f2 = None;
        }
    }
    Ok(SupResult {
        q_star,
        value: best,
        boundary_warning: q_star >= q_max * (1.0 - 1e-12),
        evaluations,
    })
}

/// `sup_q` of the top symmetric/antisymmetric eigenvalue for kernel `B` or `N`.
pub fn sup_over_q(
    kernel: KernelKind,
    params: &PhysParams,
    interaction: &InteractionModel,
    sector: Sector,
    grid: &GridOptions,
    opts: &SupOptions,
) -> Result<SupResult> {
    if kernel == KernelKind::K {
        return Err(Error::Precondition("sup over q needs kernel B or N".into()));
    }
    let base = BsOperatorSpec { kernel, q: 0.0, sector, params: *params, interaction: *interaction, grid: *grid };
    base.validate()?;
    optimize_over_q(|q| bs_top(&BsOperatorSpec { q, ..base }), params.mu, opts, true)
}
