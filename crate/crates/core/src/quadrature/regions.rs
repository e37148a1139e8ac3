//! Integrals of `M(·, q)` over the three momentum regions in two and three dimensions.
//!
//! With `q` along the first axis, `p = (p₁, p̃)` and `ρ = |p̃|`, the integrand
//! depends on `(p₁, ρ)` only. The transverse measure is `2 dρ` in `d = 2`
//! and `2πρ dρ` in `d = 3`; the reflection `p₁ → −p₁` contributes a factor two.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::panel::{clip_breakpoints, integrate, Integral, PanelScheme};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// `p² > 3μ`
    A1,
    /// `p² < 3μ` with `((p−q)² − μ)((p+q)² − μ) < 0`
    A2,
    /// `p² < 3μ` with `((p−q)² − μ)((p+q)² − μ) > 0`
    A3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub dim: usize,
    pub region: Region,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionIntegral {
    pub value: f64,
    pub error: f64,
}

/// `c₂ = 2`, `c₃ = 2π√μ`.
pub fn angular_constant(dim: usize, mu: f64) -> f64 {
    if dim == 2 {
        2.0
    } else {
        2.0 * PI * mu.sqrt()
    }
}

/// Explicit upper bound on the `A₂` integral: `4c_d` for `q ≥ √μ`,
/// `8c_d (1 + μ^{1/4}/√ε)` for `ε ≤ q ≤ √μ`.
pub fn a2_cap(dim: usize, q: f64, mu: f64, eps: f64) -> Option<f64> {
    let c = angular_constant(dim, mu);
    let q = q.abs();
    if q >= mu.sqrt() {
        Some(4.0 * c)
    } else if q >= eps {
        Some(8.0 * c * (1.0 + mu.powf(0.25) / eps.sqrt()))
    } else {
        None
    }
}

/// `(1 + 3μ)/(2μ)`: on `A₁`, `M(p, q) ≤ C/(1 + p²)`.
pub fn a1_envelope_constant(mu: f64) -> f64 {
    (1.0 + 3.0 * mu) / (2.0 * mu)
}

/// Largest value of `M(p, q)(1 + p²)/C` over an `n × n` sample of `A₁ ∩ {|p| ≤ p_max}`.
pub fn a1_envelope_ratio(dim: usize, q: f64, mu: f64, p_max: f64, n: usize) -> Result<f64> {
    check_dim(dim)?;
    let c = a1_envelope_constant(mu);
    let r0 = (3.0 * mu).sqrt();
    let mut worst = 0.0f64;
    for i in 0..n {
        let r = r0 * (1.0 + 1e-12) + (p_max - r0) * i as f64 / (n - 1).max(1) as f64;
        for j in 0..n {
            let th = PI * j as f64 / (n - 1).max(1) as f64;
            let p1 = r * th.cos();
            let m = m_bound_vec(p1, r * th.sin(), q, mu);
            worst = worst.max(m * (1.0 + r * r) / c);
        }
    }
    Ok(worst)
}

fn m_bound_vec(p1: f64, rho: f64, q: f64, mu: f64) -> f64 {
    let p2 = p1 * p1 + rho * rho;
    let a = p2 + 2.0 * p1 * q + q * q - mu;
    let b = p2 - 2.0 * p1 * q + q * q - mu;
    let den = a.abs() + b.abs();
    if den == 0.0 {
        f64::INFINITY
    } else {
        2.0 / den
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(Error::Domain(format!("regions are defined for d ∈ {{2, 3}}, got {dim}")))
    }
}

/// `∫_{ℝ^d} M(p, q) χ_{A_j}(p) dp` by nested panel quadrature in `(p₁, ρ)`.
///
/// `A₁` is rejected: `M ~ 1/p²` there and the integral diverges for `d ≥ 2`;
/// use [`a1_envelope_ratio`] instead. `A₂`/`A₃` require `|q| ≥ eps`.
pub fn region_integral_m(spec: &RegionSpec, mu: f64, eps: f64, tol: f64) -> Result<RegionIntegral> {
    check_dim(spec.dim)?;
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("regions need mu > 0, got {mu}")));
    }
    let q = spec.q.abs();
    match spec.region {
        Region::A1 => {
            return Err(Error::Precondition(
                "the A1 integral of M diverges for d >= 2; check the 1/(1+p²) envelope instead".into(),
            ))
        }
        _ if q < eps => {
            return Err(Error::Precondition(format!("q = {q} below eps = {eps}, where the integral diverges")))
        }
        _ => {}
    }
    let s = mu.sqrt();
    let p_hi = (3.0 * mu).sqrt();
    let dim = spec.dim;
    let region = spec.region;
    let inner_tol = 0.1 * tol;
    let mut inner_err = 0.0f64;
    let mut failure: Option<Error> = None;
    let outer_pts = clip_breakpoints(0.0, p_hi, &[(q - s).abs(), q, s - q, s + q, s]);
    let outer = integrate_smoothed(
        |p1| match inner(p1, q, mu, dim, region, inner_tol) {
            Ok((v, e)) => {
                inner_err = inner_err.max(e);
                v
            }
            // a near-singular slice; its error bound enters the total
            Err(Error::Accuracy { estimate, bound }) => {
                inner_err = inner_err.max(bound);
                estimate
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        &outer_pts,
        tol,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(RegionIntegral { value: 2.0 * outer.value, error: 2.0 * (outer.error + p_hi * inner_err) })
}

fn inner(p1: f64, q: f64, mu: f64, dim: usize, region: Region, tol: f64) -> Result<(f64, f64)> {
    let rho_max2 = 3.0 * mu - p1 * p1;
    if rho_max2 <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let rho_max = rho_max2.sqrt();
    let za = mu - (p1 + q) * (p1 + q);
    let zb = mu - (p1 - q) * (p1 - q);
    let cuts: Vec<f64> = [za, zb].iter().filter(|z| **z > 0.0).map(|z| z.sqrt()).collect();
    let measure = |rho: f64| if dim == 2 { 2.0 } else { 2.0 * PI * rho };
    let f = |rho: f64| {
        let p2 = p1 * p1 + rho * rho;
        let a = p2 + 2.0 * p1 * q + q * q - mu;
        let b = p2 - 2.0 * p1 * q + q * q - mu;
        let inside = match region {
            Region::A2 => a * b < 0.0,
            _ => a * b > 0.0,
        };
        if !inside {
            return 0.0;
        }
        measure(rho) * 2.0 / (a.abs() + b.abs())
    };
    let r = integrate_smoothed(f, &clip_breakpoints(0.0, rho_max, &cuts), tol)?;
    Ok((r.value, r.error))
}

/// `∫ f` over consecutive panels, each mapped through `p = l + (r − l)(3t² − 2t³)`.
///
/// The Jacobian vanishes at both panel ends, which tames the inverse square
/// root and logarithmic endpoint behaviour of the region integrands.
fn integrate_smoothed<F: FnMut(f64) -> f64>(mut f: F, breakpoints: &[f64], tol: f64) -> Result<Integral> {
    let n = breakpoints.len().saturating_sub(1);
    let scheme = PanelScheme {
        breakpoints: (0..=n).map(|k| k as f64).collect(),
        nodes_per_panel: 12,
        max_depth: 50,
        abs_tol: tol,
        rel_tol: tol,
    };
    integrate(
        |x| {
            let k = (x.floor() as usize).min(n.saturating_sub(1));
            let t = x - k as f64;
            let (l, r) = (breakpoints[k], breakpoints[k + 1]);
            let jac = 6.0 * t * (1.0 - t) * (r - l);
            if jac == 0.0 {
                return 0.0;
            }
            f(l + (r - l) * t * t * (3.0 - 2.0 * t)) * jac
        },
        &scheme,
    )
}
