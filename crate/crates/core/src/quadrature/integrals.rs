//! One-dimensional kernel integrals on the relative-momentum axis.

use serde::{Deserialize, Serialize};

use super::panel::{clip_breakpoints, integrate, Integral, PanelScheme};
use crate::error::{Error, Result};
use crate::kernels::{b_t, m_bound, n_t, Envelope, PhysParams};

/// Momenta where `(p ± q)² = μ` or `p² = μ`, intersected with `p ≥ 0`.
pub fn fermi_breakpoints(q: f64, mu: f64) -> Vec<f64> {
    if mu <= 0.0 {
        return vec![0.0];
    }
    let s = mu.sqrt();
    let q = q.abs();
    vec![0.0, (s - q).abs(), s, s + q]
}

/// Fermi breakpoints plus points graded geometrically (ratio 1/4) toward each of
/// them, from `√μ/2` down to the thermal width `T/(8√μ)`.
///
/// Without these an adaptive rule can miss kernel mass confined to a thermal
/// layer, e.g. `B_T(·, √μ)` near `p = 0`.
pub fn thermal_breakpoints(q: f64, mu: f64, temp: f64) -> Vec<f64> {
    let mut pts = fermi_breakpoints(q, mu);
    if mu > 0.0 && temp > 0.0 {
        let floor = temp / (8.0 * mu.sqrt());
        for c in fermi_breakpoints(q, mu) {
            let mut h = 0.5 * mu.sqrt();
            while h > floor {
                pts.push(c - h);
                pts.push(c + h);
                h *= 0.25;
            }
        }
    }
    pts.retain(|p| *p >= 0.0);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn scheme_on(lo: f64, hi: f64, q: f64, params: &PhysParams, base: &PanelScheme) -> PanelScheme {
    let mut interior = thermal_breakpoints(q, params.mu, params.temp);
    interior.extend_from_slice(&base.breakpoints);
    PanelScheme { breakpoints: clip_breakpoints(lo, hi, &interior), ..base.clone() }
}

fn check(params: &PhysParams) -> Result<f64> {
    params.validate()?;
    if params.mu <= 0.0 {
        return Err(Error::Precondition(format!("Fermi-sphere integrals need mu > 0, got {}", params.mu)));
    }
    Ok((3.0 * params.mu).sqrt())
}

/// `m_T(q) = ∫₀^{√(3μ)} B_T(p, q) dp`.
pub fn integrate_m_t(q: f64, params: &PhysParams, scheme: &PanelScheme) -> Result<Integral> {
    let hi = check(params)?;
    integrate(|p| b_t(p, q, params), &scheme_on(0.0, hi, q, params, scheme))
}

/// `n_T(q) = ∫₀^{√(3μ)} N_T(p, q) dp`.
pub fn integrate_n_t(q: f64, params: &PhysParams, scheme: &PanelScheme) -> Result<Integral> {
    let hi = check(params)?;
    integrate(|p| n_t(p, q, params), &scheme_on(0.0, hi, q, params, scheme))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullLineIntegral {
    pub value: f64,
    pub error: f64,
    /// `2 ∫_{P}^{∞} N_T dp`, computed numerically.
    pub tail: f64,
    /// Upper bound on `tail` from `N_T ≤ C/(1 + p² + q²)` beyond `p² + q² = μ + ε`.
    pub tail_bound: f64,
    pub cutoff: f64,
}

/// Default truncation momentum `8 √(μ + 1)`.
pub fn default_cutoff(mu: f64) -> f64 {
    8.0 * (mu.max(0.0) + 1.0).sqrt()
}

/// Constant `C(μ, ε) = (1 + μ + ε)/ε` with `ε = μ/2`.
pub fn tail_envelope_constant(mu: f64) -> f64 {
    let eps = 0.5 * mu;
    (1.0 + mu + eps) / eps
}

/// `∫_ℝ N_T(p, q) dp` as `2 ∫₀^P` plus a substituted tail `p = P/t`.
pub fn integrate_n_t_fullline(q: f64, params: &PhysParams, scheme: &PanelScheme) -> Result<FullLineIntegral> {
    check(params)?;
    let cutoff = default_cutoff(params.mu);
    let core = integrate(|p| n_t(p, q, params), &scheme_on(0.0, cutoff, q, params, scheme))?;
    let tail_scheme = PanelScheme { breakpoints: vec![0.0, 1.0], ..scheme.clone() };
    let tail = integrate(
        |t| {
            let p = cutoff / t;
            n_t(p, q, params) * cutoff / (t * t)
        },
        &tail_scheme,
    )?;
    let c = tail_envelope_constant(params.mu);
    let w = (1.0 + q * q).sqrt();
    let tail_bound = 2.0 * c * (std::f64::consts::FRAC_PI_2 - (cutoff / w).atan()) / w;
    Ok(FullLineIntegral {
        value: 2.0 * (core.value + tail.value),
        error: 2.0 * (core.error + tail.error),
        tail: 2.0 * tail.value,
        tail_bound,
        cutoff,
    })
}

/// Weight multiplying `M` near the two singular momenta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MWeight {
    /// `||p| − √μ|`, admissible for `|q| ≤ √μ/2`.
    AbsPMinusSqrtMu,
    /// `|p|`, admissible for `||q| − √μ| ≤ √μ/2`.
    AbsP,
}

/// `∫_{−√(3μ)}^{√(3μ)} M(p, q) w(p) dp`.
pub fn weighted_m_integral(q: f64, mu: f64, weight: MWeight, scheme: &PanelScheme) -> Result<Integral> {
    if !(mu > 0.0 && mu.is_finite() && q.is_finite()) {
        return Err(Error::Domain(format!("need finite q and mu > 0, got q={q}, mu={mu}")));
    }
    let s = mu.sqrt();
    let q = q.abs();
    let ok = match weight {
        MWeight::AbsPMinusSqrtMu => q <= 0.5 * s,
        MWeight::AbsP => (q - s).abs() <= 0.5 * s,
    };
    if !ok {
        return Err(Error::Precondition(format!("q = {q} outside the admissible range for {weight:?}")));
    }
    let hi = (3.0 * mu).sqrt();
    let mut interior = fermi_breakpoints(q, mu);
    interior.extend_from_slice(&scheme.breakpoints);
    let sch = PanelScheme { breakpoints: clip_breakpoints(0.0, hi, &interior), ..scheme.clone() };
    let half = integrate(
        |p| {
            let w = match weight {
                MWeight::AbsPMinusSqrtMu => (p - s).abs(),
                MWeight::AbsP => p,
            };
            match m_bound(p, q, mu) {
                Envelope::Finite(m) => m * w,
                Envelope::Pole => f64::NAN,
            }
        },
        &sch,
    )?;
    Ok(Integral { value: 2.0 * half.value, error: 2.0 * half.error, evaluations: half.evaluations })
}
