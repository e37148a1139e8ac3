//! Strong-coupling kernel estimates at `T = 1` as the chemical potential `μ → 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{uniform, BoundReport};
use crate::error::{Error, Result};
use crate::kernels::{f_strong, f_strong_prime_deficit, n_strong, n_strong_dnu};
use crate::quadrature::gauss_legendre::gauss_legendre;
use crate::quadrature::panel::{integrate, PanelScheme};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrongCouplingOptions {
    /// Decreasing chemical potentials.
    pub mus: Vec<f64>,
    /// Half-width of the square `[−L, L]²` integrated numerically.
    pub box_half_width: f64,
    pub nodes_per_panel: usize,
    /// Side of the majorization grid.
    pub n_grid: usize,
    /// Number of samples for the scalar inequalities.
    pub n_samples: usize,
    /// Number of `p` values for `sup_p ∫ |N_{1,μ} − N_{1,0}| dq`.
    pub n_p: usize,
}

impl Default for StrongCouplingOptions {
    fn default() -> Self {
        Self {
            mus: vec![0.5, 0.2, 0.1, 0.05, 0.01],
            box_half_width: 10.0,
            nodes_per_panel: 16,
            n_grid: 200,
            n_samples: 10_000,
            n_p: 101,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrongCouplingValues {
    pub mus: Vec<f64>,
    /// Hilbert–Schmidt norm of `N_{1,μ} − N_{1,0}`, including the certified tail.
    pub hs: Vec<f64>,
    /// Squared-norm contribution outside the box, bounded analytically.
    pub hs_tail: Vec<f64>,
    /// `sup_p ∫ |N_{1,μ} − N_{1,0}| dq`, including the certified tail.
    pub sup_integral: Vec<f64>,
}

const PANELS: [f64; 10] = [0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0, 10.0];

fn box_breakpoints(l: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    b.extend(PANELS.iter().map(|x| x * l / 10.0));
    b
}

/// Tensor Gauss rule on `[0, L]`.
fn tensor_nodes(l: f64, npp: usize) -> Vec<(f64, f64)> {
    let rule = gauss_legendre(npp);
    box_breakpoints(l).windows(2).flat_map(|w| rule.mapped(w[0], w[1]).collect::<Vec<_>>()).collect()
}

/// `‖N_{1,μ} − N_{1,0}‖²_HS` over the box and the analytic bound on the rest.
///
/// Outside the box `|N_{1,μ} − N_{1,0}| ≤ μ/(p² + q² − 1)²`, so the remainder is
/// at most `π μ² / (3 (L² − 1)³)`.
pub fn hs_norm_squared(mu: f64, l: f64, npp: usize) -> (f64, f64) {
    let nodes = tensor_nodes(l, npp);
    let core: f64 = nodes
        .par_iter()
        .map(|&(p, wp)| {
            nodes
                .iter()
                .map(|&(q, wq)| {
                    let d = n_strong(p, q, mu) - n_strong(p, q, 0.0);
                    wq * d * d
                })
                .sum::<f64>()
                * wp
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum();
    let tail = std::f64::consts::PI * mu * mu / (3.0 * (l * l - 1.0).powi(3));
    (4.0 * core, tail)
}

/// `sup_p ∫_ℝ |N_{1,μ}(p, q) − N_{1,0}(p, q)| dq` over `p ∈ [0, L]`.
pub fn sup_integral(mu: f64, l: f64, n_p: usize) -> Result<f64> {
    let ps = uniform(0.0, l, n_p);
    let scheme = PanelScheme::default().with_breakpoints(box_breakpoints(l)).with_tol(1e-13, 1e-10);
    // ∫_L^∞ μ/(q² − 1)² dq ≤ μ / (3 L³ (1 − 1/L²)²)
    let tail = 2.0 * mu / (3.0 * l.powi(3) * (1.0 - 1.0 / (l * l)).powi(2));
    let vals: Vec<Result<f64>> = ps
        .par_iter()
        .map(|&p| Ok(2.0 * integrate(|q| (n_strong(p, q, mu) - n_strong(p, q, 0.0)).abs(), &scheme)?.value))
        .collect();
    let mut best = 0.0f64;
    for v in vals {
        best = best.max(v?);
    }
    Ok(best + tail)
}

pub fn strong_coupling_values(opts: &StrongCouplingOptions) -> Result<StrongCouplingValues> {
    if opts.box_half_width <= 2.0 {
        return Err(Error::Domain("box half-width must exceed 2".into()));
    }
    if opts.mus.iter().any(|m| !(*m > 0.0 && *m <= 1.0)) {
        return Err(Error::Domain("chemical potentials must lie in (0, 1]".into()));
    }
    let mut out = StrongCouplingValues { mus: opts.mus.clone(), hs: vec![], hs_tail: vec![], sup_integral: vec![] };
    for &mu in &opts.mus {
        let (core, tail) = hs_norm_squared(mu, opts.box_half_width, opts.nodes_per_panel);
        out.hs.push((core + tail).sqrt());
        out.hs_tail.push(tail);
        out.sup_integral.push(sup_integral(mu, opts.box_half_width, opts.n_p)?);
    }
    Ok(out)
}

/// The `i`-th point of a two-dimensional Weyl sequence on `[−a, a]²`.
pub fn weyl_pair(i: usize, a: f64) -> (f64, f64) {
    let g1 = 0.754_877_666_246_692_7; // 1/plastic number
    let g2 = 0.569_840_290_998_053_2;
    let k = (i + 1) as f64;
    (a * (2.0 * (k * g1).fract() - 1.0), a * (2.0 * (k * g2).fract() - 1.0))
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Envelope `χ_{x<2}/4 + χ_{x≥2}/(x − 1)²` for `1/f(x − ν)²`, `ν ∈ [0, 1]`.
pub fn derivative_envelope(x: f64) -> f64 {
    if x < 2.0 {
        0.25
    } else {
        1.0 / ((x - 1.0) * (x - 1.0))
    }
}

pub fn verify_strong_coupling(opts: &StrongCouplingOptions) -> Result<BoundReport> {
    let mut report = BoundReport::new(
        "strong_coupling",
        format!("T=1, mu in {:?}, box [-{l}, {l}]^2, {}x{} majorization grid, {} samples",
            opts.mus, opts.n_grid, opts.n_grid, opts.n_samples, l = opts.box_half_width),
    );
    let vals = strong_coupling_values(opts)?;
    let refined = StrongCouplingOptions { nodes_per_panel: 2 * opts.nodes_per_panel, ..opts.clone() };
    let hs_fine: Vec<f64> = opts
        .mus
        .iter()
        .map(|&mu| {
            let (c, t) = hs_norm_squared(mu, refined.box_half_width, refined.nodes_per_panel);
            (c + t).sqrt()
        })
        .collect();
    let hs_change = vals.hs.iter().zip(&hs_fine).map(|(a, b)| (a - b).abs() / b.abs().max(1e-300)).fold(0.0, f64::max);
    report.check("hs_quadrature_converged", hs_change < 1e-6, format!("max relative change under node doubling {hs_change:.3e}"));
    for (name, v) in [("hs_norm", &vals.hs), ("sup_integral", &vals.sup_integral)] {
        let first = v.first().copied().unwrap_or(0.0);
        let last = v.last().copied().unwrap_or(0.0);
        report.check(
            &format!("{name}_strictly_decreasing"),
            strictly_decreasing(v),
            format!("{v:?}"),
        );
        report.check(
            &format!("{name}_final_below_quarter"),
            last < 0.25 * first,
            format!("final/initial = {:.4}", last / first),
        );
    }
    report.c_emp = vals.hs.first().copied();

    // pointwise majorization by k(p, q) = min{N_{1,0}(p, 0), N_{1,0}(0, q)}
    let a = 0.5 * opts.box_half_width;
    let grid = uniform(-a, a, opts.n_grid);
    let mut maj_margin = f64::INFINITY;
    let mut symmetric = true;
    for &p in &grid {
        for &q in &grid {
            let k = n_strong(p, 0.0, 0.0).min(n_strong(0.0, q, 0.0));
            let kt = n_strong(q, 0.0, 0.0).min(n_strong(0.0, p, 0.0));
            symmetric &= k == kt;
            let n = n_strong(p, q, 0.0);
            maj_margin = maj_margin.min(k * (1.0 + 4.0 * f64::EPSILON) - n);
        }
    }
    report.margin(maj_margin);
    report.check("k_majorization", maj_margin >= 0.0, format!("min(k − N) = {maj_margin:.3e}"));
    report.check("k_symmetric", symmetric, String::new());

    // |f'| < 1 and midpoint convexity of x/tanh x
    let mut deficit_min = f64::INFINITY;
    let mut convex_margin = f64::INFINITY;
    for i in 0..opts.n_samples {
        let (x, y) = weyl_pair(i, 50.0);
        deficit_min = deficit_min.min(f_strong_prime_deficit(x));
        let g = |t: f64| 0.5 * f_strong(2.0 * t);
        let lhs = 0.5 * (g(x) + g(y));
        let rhs = g(0.5 * (x + y));
        convex_margin = convex_margin.min((lhs - rhs) + 4.0 * f64::EPSILON * lhs);
    }
    report.check("f_prime_below_one", deficit_min > 0.0, format!("min(1 − |f'|) = {deficit_min:.3e}"));
    report.check("midpoint_convexity", convex_margin >= 0.0, format!("min margin {convex_margin:.3e}"));

    // derivative bound and its envelope
    let dgrid = uniform(-a, a, 61);
    let mut d_margin = f64::INFINITY;
    let mut env_margin = f64::INFINITY;
    let mut quarter_tail_violations = 0usize;
    for nu in [0.0, 0.25, 0.5, 0.75, 1.0] {
        for &p in &dgrid {
            for &q in &dgrid {
                let x = p * p + q * q;
                let bound = 1.0 / f_strong(x - nu).powi(2);
                d_margin = d_margin.min(bound * (1.0 + 1e-12) - n_strong_dnu(p, q, nu).abs());
                env_margin = env_margin.min(derivative_envelope(x) * (1.0 + 1e-12) - bound);
                if x >= 2.0 && bound > 0.25 / ((x - 1.0) * (x - 1.0)) {
                    quarter_tail_violations += 1;
                }
            }
        }
    }
    report.check("derivative_bound", d_margin >= 0.0, format!("min(1/f² − |dN/dnu|) = {d_margin:.3e}"));
    report.check("derivative_envelope", env_margin >= 0.0, format!("min(envelope − 1/f²) = {env_margin:.3e}"));
    report.notes.push(format!(
        "a tail constant of 1/4 in place of 1 would fail at {quarter_tail_violations} sampled points"
    ));
    Ok(report.finish())
}
