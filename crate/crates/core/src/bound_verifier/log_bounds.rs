//! Logarithmic upper and lower bounds on `m_T(q)` and `n_T(q)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{geometric, refine, refine_geometric, rel_change, BoundReport};
use crate::critical_temps::linear_fit;
use crate::error::Result;
use crate::kernels::PhysParams;
use crate::quadrature::integrals::{integrate_m_t, integrate_n_t};
use crate::quadrature::panel::PanelScheme;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogBoundOptions {
    pub mu: f64,
    /// Temperatures in units of `μ`.
    pub temps: Vec<f64>,
    /// Total momenta in units of `√μ`.
    pub qs: Vec<f64>,
    pub tol: f64,
}

impl LogBoundOptions {
    pub fn new(mu: f64) -> Self {
        let s = 1.0;
        let mut qs: Vec<f64> = (0..=30).map(|k| 0.1 * k as f64).collect();
        for k in 1..=6 {
            let d = 10f64.powi(-k);
            qs.push(d);
            qs.push(s - d);
            qs.push(s + d);
        }
        // the excess jumps where a window closes, so sample just past each edge
        qs.extend([0.5 * (1.0 + 1e-9), 1.5 * (1.0 + 1e-9)]);
        qs.sort_by(f64::total_cmp);
        qs.dedup();
        let mut temps = geometric(1e-6, 10.0, 15);
        temps.extend([0.5, 0.5 * (1.0 + 1e-9)]);
        temps.sort_by(f64::total_cmp);
        Self { mu, temps, qs, tol: 1e-10 }
    }
}

/// `μ^{-1/2} ln(1/(T/μ + |q|/√μ))` on its window, the `q = 0` singular term.
pub fn log_term_zero(temp: f64, q: f64, mu: f64) -> f64 {
    let t = temp / mu;
    let u = q.abs() / mu.sqrt();
    if t.max(u) <= 0.5 {
        (1.0 / (t + u)).ln() / mu.sqrt()
    } else {
        0.0
    }
}

/// `½ μ^{-1/2} ln(1/(T/μ + ||q| − √μ|/√μ))` on its window, the `|q| = √μ` term.
pub fn log_term_fermi(temp: f64, q: f64, mu: f64) -> f64 {
    let t = temp / mu;
    let u = (q.abs() - mu.sqrt()).abs() / mu.sqrt();
    if t.max(u) <= 0.5 {
        0.5 * (1.0 / (t + u)).ln() / mu.sqrt()
    } else {
        0.0
    }
}

struct Excess {
    m: f64,
    n: f64,
}

/// `max (m_T − log terms)` and `max (n_T − log terms)` over the grid.
fn excess(mu: f64, temps: &[f64], qs: &[f64], tol: f64) -> Result<Excess> {
    let scheme = PanelScheme::default().with_tol(tol, tol);
    let points: Vec<(f64, f64)> = temps.iter().flat_map(|&t| qs.iter().map(move |&q| (t, q))).collect();
    let vals: Vec<Result<(f64, f64)>> = points
        .par_iter()
        .map(|&(t, u)| {
            let params = PhysParams::new(mu, t * mu, 1);
            let q = u * mu.sqrt();
            let m = integrate_m_t(q, &params, &scheme)?.value;
            let n = integrate_n_t(q, &params, &scheme)?.value;
            let lz = log_term_zero(params.temp, q, mu);
            let lf = log_term_fermi(params.temp, q, mu);
            Ok((m - lz, n - lz - lf))
        })
        .collect();
    let mut out = Excess { m: f64::NEG_INFINITY, n: f64::NEG_INFINITY };
    for v in vals {
        let (a, b) = v?;
        out.m = out.m.max(a);
        out.n = out.n.max(b);
    }
    Ok(out)
}

/// Slopes of `n_T(0)√μ` and `n_T(√μ)√μ` against `ln(μ/T)`, and the spread of `m_T(√μ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularityFit {
    pub slope_zero: f64,
    pub slope_fermi: f64,
    /// `max/min` of `m_T(√μ)` over the temperatures.
    pub m_fermi_ratio: f64,
    /// `min_T (n_T(0)√μ − ln(μ/T))`.
    pub offset_zero_min: f64,
    /// `min_T (n_T(√μ)√μ − ½ ln(μ/T))`.
    pub offset_fermi_min: f64,
}

/// Fits over the given temperatures (in units of `μ`).
pub fn singularity_fit(mu: f64, temps: &[f64], tol: f64) -> Result<SingularityFit> {
    let scheme = PanelScheme::default().with_tol(tol, tol);
    let s = mu.sqrt();
    let rows: Vec<Result<(f64, f64, f64, f64)>> = temps
        .par_iter()
        .map(|&t| {
            let params = PhysParams::new(mu, t * mu, 1);
            let n0 = integrate_n_t(0.0, &params, &scheme)?.value;
            let nf = integrate_n_t(s, &params, &scheme)?.value;
            let mf = integrate_m_t(s, &params, &scheme)?.value;
            Ok(((1.0 / t).ln(), n0 * s, nf * s, mf))
        })
        .collect();
    let rows: Vec<(f64, f64, f64, f64)> = rows.into_iter().collect::<Result<_>>()?;
    let x: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let y0: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let yf: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let (slope_zero, ..) = linear_fit(&x, &y0)?;
    let (slope_fermi, ..) = linear_fit(&x, &yf)?;
    let mmax = rows.iter().map(|r| r.3).fold(f64::NEG_INFINITY, f64::max);
    let mmin = rows.iter().map(|r| r.3).fold(f64::INFINITY, f64::min);
    Ok(SingularityFit {
        slope_zero,
        slope_fermi,
        m_fermi_ratio: mmax / mmin,
        offset_zero_min: rows.iter().map(|r| r.1 - r.0).fold(f64::INFINITY, f64::min),
        offset_fermi_min: rows.iter().map(|r| r.2 - 0.5 * r.0).fold(f64::INFINITY, f64::min),
    })
}

/// Upper bounds with an empirical constant, stable under refinement, and the
/// two logarithmic lower bounds.
pub fn verify_log_bounds(opts: &LogBoundOptions) -> Result<BoundReport> {
    let mu = opts.mu;
    let mut report = BoundReport::new(
        "log_bounds",
        format!("mu={mu}, {} temperatures in [{:e}, {:e}]·mu, {} momenta in [0, {}]·sqrt(mu)",
            opts.temps.len(),
            opts.temps.first().copied().unwrap_or(0.0),
            opts.temps.last().copied().unwrap_or(0.0),
            opts.qs.len(),
            opts.qs.last().copied().unwrap_or(0.0)),
    );
    let coarse = excess(mu, &opts.temps, &opts.qs, opts.tol)?;
    let fine = excess(mu, &refine_geometric(&opts.temps), &refine(&opts.qs), opts.tol)?;
    let scale = 1.0 / mu.sqrt();
    let c = coarse.m.max(coarse.n);
    report.c_emp = Some(fine.m.max(fine.n));
    let dm = rel_change(coarse.m, fine.m, scale);
    let dn = rel_change(coarse.n, fine.n, scale);
    report.check(
        "m_upper_constant_stable",
        coarse.m.is_finite() && dm < 0.1,
        format!("C_emp(m) = {:.6} -> {:.6} under refinement (relative change {dm:.3e})", coarse.m, fine.m),
    );
    report.check(
        "n_upper_constant_stable",
        coarse.n.is_finite() && dn < 0.1,
        format!("C_emp(n) = {:.6} -> {:.6} under refinement (relative change {dn:.3e})", coarse.n, fine.n),
    );
    // on the refined grid the bound holds with the coarse constant up to the stability slack
    report.margin(c + 0.1 * c.abs().max(scale) - fine.m.max(fine.n));

    let low: Vec<f64> = opts.temps.iter().copied().filter(|t| *t <= 1e-2).collect();
    if low.len() >= 3 {
        let fit = singularity_fit(mu, &low, opts.tol)?;
        report.check(
            "lower_bound_zero",
            fit.offset_zero_min.is_finite() && fit.slope_zero > 1.0 - 0.05,
            format!("n_T(0)·sqrt(mu) − ln(mu/T) ≥ {:.6}; slope {:.5}", fit.offset_zero_min, fit.slope_zero),
        );
        report.check(
            "lower_bound_fermi",
            fit.offset_fermi_min.is_finite() && fit.slope_fermi > 0.5 - 0.05,
            format!("n_T(sqrt mu)·sqrt(mu) − ½ln(mu/T) ≥ {:.6}; slope {:.5}", fit.offset_fermi_min, fit.slope_fermi),
        );
        report.check(
            "m_bounded_at_fermi_momentum",
            fit.m_fermi_ratio < 3.0,
            format!("max/min of m_T(sqrt mu) = {:.5}", fit.m_fermi_ratio),
        );
    }
    Ok(report.finish())
}
