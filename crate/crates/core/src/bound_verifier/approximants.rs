//! Position-space remainder between a pair kernel and its singular approximant.
//!
//! For `A ∈ {B_T(·, q), N_T(·, q)}` the remainder kernel depends on `r = x − y` only:
//!
//! `X(r) = π⁻¹ [∫₀^{√(3μ)} A(p)(cos pr − c₁ cos √μ r − c₂) dp + ∫_{√(3μ)}^∞ A(p) cos pr dp]`
//!
//! with `c₁` the window `|q| < √μ/2` and, for `N` only, `c₂` the window
//! `||q| − √μ| < √μ/2`; both windows are closed when `T ≥ μ/2`. The remainder
//! should grow at most linearly in `r`, with a slope independent of `T` and `q`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{refine, rel_change, BoundReport};
use crate::error::Result;
use crate::interactions::InteractionModel;
use crate::kernels::{b_t, n_t, PhysParams};
use crate::quadrature::integrals::thermal_breakpoints;
use crate::quadrature::panel::{clip_breakpoints, integrate, PanelScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Approximant {
    /// `B_T` minus the Fermi-sphere projection weighted by `m_T(q)`.
    Q,
    /// `N_T` minus the Fermi-sphere and zero-momentum projections weighted by `n_T(q)`.
    W,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximantOptions {
    pub which: Approximant,
    pub mu: f64,
    /// Temperatures in units of `μ`.
    pub temps: Vec<f64>,
    /// Total momenta in units of `√μ`.
    pub qs: Vec<f64>,
    /// Largest separation `|x − y|` sampled.
    pub r_max: f64,
    pub n_r: usize,
    /// Momentum cutoff of the oscillatory integral; the remainder is bounded analytically.
    pub p_cut: f64,
    pub tol: f64,
}

/// Radius outside of which the interaction is numerically negligible.
pub fn support_radius(model: &InteractionModel) -> f64 {
    match *model {
        InteractionModel::Gaussian { width, .. } => 5.0 * width,
        InteractionModel::GaussianDifference { w1, w2, .. } => 5.0 * w1.max(w2),
        InteractionModel::SquareWell { radius, .. } => radius,
        InteractionModel::Delta { .. } => 0.0,
    }
}

impl ApproximantOptions {
    pub fn new(which: Approximant, model: &InteractionModel, mu: f64) -> Self {
        let s = mu.sqrt();
        Self {
            which,
            mu,
            temps: vec![1e-1, 1e-2, 1e-3, 1e-4],
            qs: vec![0.0, 1e-3, 0.1, 0.25, 0.49, 0.5, 0.75, 0.99, 1.0, 1.001, 1.25, 1.49, 1.5, 2.0],
            r_max: (2.0 * support_radius(model)).max(1.0 / s),
            n_r: 33,
            p_cut: 100.0 * s.max(1.0),
            tol: 1e-9,
        }
    }
}

/// `(c₁, c₂)` for the given kernel, temperature and total momentum.
pub fn windows(which: Approximant, temp: f64, q: f64, mu: f64) -> (f64, f64) {
    if temp >= 0.5 * mu {
        return (0.0, 0.0);
    }
    let s = mu.sqrt();
    let c1 = if q.abs() < 0.5 * s { 1.0 } else { 0.0 };
    let c2 = match which {
        Approximant::W if (q.abs() - s).abs() < 0.5 * s => 1.0,
        _ => 0.0,
    };
    (c1, c2)
}

/// `X(r)` and an upper bound on the part of `|X(r)|` beyond the momentum cutoff.
pub fn remainder_kernel(which: Approximant, r: f64, q: f64, params: &PhysParams, p_cut: f64, tol: f64) -> Result<(f64, f64)> {
    let mu = params.mu;
    let s = mu.sqrt();
    let a = |p: f64| match which {
        Approximant::Q => b_t(p, q, params),
        Approximant::W => n_t(p, q, params),
    };
    let (c1, c2) = windows(which, params.temp, q, mu);
    let shift = c1 * (s * r).cos() + c2;
    let p_in = (3.0 * mu).sqrt();
    let scheme = |lo: f64, hi: f64, mut pts: Vec<f64>| {
        // one panel per half period of cos(pr)
        if r > 0.0 {
            let h = PI / r;
            let mut x = (lo / h).ceil() * h;
            while x < hi {
                pts.push(x);
                x += h;
            }
        }
        pts.extend((1..(hi - lo).ceil() as usize).map(|k| lo + k as f64));
        PanelScheme::default().with_breakpoints(clip_breakpoints(lo, hi, &pts)).with_tol(tol, tol)
    };
    let inner = integrate(|p| a(p) * ((p * r).cos() - shift), &scheme(0.0, p_in, thermal_breakpoints(q, mu, params.temp)))?;
    let outer = integrate(|p| a(p) * (p * r).cos(), &scheme(p_in, p_cut, thermal_breakpoints(q, mu, params.temp)))?;
    // A ≤ 1/(p² − μ) beyond the cutoff
    let tail = (0.5 / s) * ((p_cut + s) / (p_cut - s)).ln();
    Ok(((inner.value + outer.value) / PI, (tail + inner.error + outer.error) / PI))
}

/// `max_{q, r} (|X(r)| + tail) / (1 + r)` per temperature.
fn c_emp_per_temp(opts: &ApproximantOptions, qs: &[f64], rs: &[f64], tol: f64) -> Result<Vec<f64>> {
    let s = opts.mu.sqrt();
    opts.temps
        .iter()
        .map(|&t| {
            let params = PhysParams::new(opts.mu, t * opts.mu, 1);
            let pts: Vec<(f64, f64)> = qs.iter().flat_map(|&q| rs.iter().map(move |&r| (q * s, r))).collect();
            let vals: Vec<Result<f64>> = pts
                .par_iter()
                .map(|&(q, r)| {
                    let (x, tail) = remainder_kernel(opts.which, r, q, &params, opts.p_cut, tol)?;
                    Ok((x.abs() + tail) / (1.0 + r))
                })
                .collect();
            let mut best = 0.0f64;
            for v in vals {
                best = best.max(v?);
            }
            Ok(best)
        })
        .collect()
}

/// Linear growth of the remainder with a constant that neither blows up as
/// `T` decreases over the temperature list nor moves under refinement.
pub fn verify_approximants(opts: &ApproximantOptions) -> Result<BoundReport> {
    let rs: Vec<f64> = (0..opts.n_r).map(|k| opts.r_max * k as f64 / (opts.n_r - 1).max(1) as f64).collect();
    let mut report = BoundReport::new(
        "approximants",
        format!("{:?}, mu={}, T/mu={:?}, q/sqrt(mu)={:?}, r in [0, {}] ({} points), p_cut={}",
            opts.which, opts.mu, opts.temps, opts.qs, opts.r_max, opts.n_r, opts.p_cut),
    );
    let coarse = c_emp_per_temp(opts, &opts.qs, &rs, opts.tol)?;
    let fine = c_emp_per_temp(opts, &refine(&opts.qs), &refine(&rs), 1e-2 * opts.tol)?;
    let c = fine.iter().copied().fold(0.0, f64::max);
    let cmin = fine.iter().copied().fold(f64::INFINITY, f64::min);
    report.c_emp = Some(c);
    let change = coarse.iter().zip(&fine).map(|(a, b)| rel_change(*a, *b, 1e-12)).fold(0.0, f64::max);
    report.check(
        "constant_stable_under_refinement",
        change < 0.1,
        format!("per-temperature C_emp {coarse:?} -> {fine:?}; max relative change {change:.3e}"),
    );
    let spread = c / cmin;
    report.check(
        "constant_uniform_in_temperature",
        c.is_finite() && spread < 1.5,
        format!("max/min of C_emp over T/mu in {:?} = {spread:.4}", opts.temps),
    );
    // windows closed: the whole kernel is uniformly bounded
    let hot = PhysParams::new(opts.mu, opts.mu, 1);
    let mut hot_max = 0.0f64;
    for &q in &opts.qs {
        let (x, tail) = remainder_kernel(opts.which, 0.0, q * opts.mu.sqrt(), &hot, opts.p_cut, opts.tol)?;
        hot_max = hot_max.max(x.abs() + tail);
    }
    report.check("closed_windows_bounded", hot_max.is_finite(), format!("max |X(0)| + tail at T = mu: {hot_max:.6}"));
    report.margin(0.0);
    Ok(report.finish())
}
