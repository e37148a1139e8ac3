//! Ordering of bottom eigenvalues of the criterion-form matrices at `T_c⁰`.
//!
//! For `V̂ ≥ 0` the four quantities
//! `a₁ = inf σ_s(K − λV) ≥ a₂ = inf_q inf σ_s(B⁻¹ − λV) ≥ a₃ = inf_q inf σ_s(N⁻¹ − λV) ≥ a₄ = inf σ(K − λV)`
//! all vanish at the critical temperature.

use serde::{Deserialize, Serialize};

use super::BoundReport;
use crate::bs_spectra::{criterion_bottom, optimize_over_q, KernelKind, MomentumGrid, Sector, SupOptions};
use crate::critical_temps::bisect_temperature;
use crate::error::{Error, Result};
use crate::interactions::InteractionModel;
use crate::kernels::PhysParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainOptions {
    pub nodes_per_panel: usize,
    pub base_panels: usize,
    /// Relative width of the final temperature bracket.
    pub rel_tol: f64,
    pub sup: SupOptions,
}

impl Default for ChainOptions {
    fn default() -> Self {
        Self { nodes_per_panel: 12, base_panels: 6, rel_tol: 1e-9, sup: SupOptions::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainResult {
    pub lambda: f64,
    pub tc0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    /// Minimiser of `a₃` over `q`.
    pub q3: f64,
}

impl ChainResult {
    pub fn values(&self) -> [f64; 4] {
        [self.a1, self.a2, self.a3, self.a4]
    }
}

fn grid(q: f64, params: &PhysParams, opts: &ChainOptions) -> MomentumGrid {
    MomentumGrid::graded(q, params.mu, params.temp, opts.nodes_per_panel, opts.base_panels, None)
}

fn bottom(kernel: KernelKind, q: f64, sector: Sector, params: &PhysParams, model: &InteractionModel, lambda: f64, opts: &ChainOptions) -> Result<f64> {
    criterion_bottom(kernel, q, sector, params, model, lambda, &grid(q, params, opts))
}

/// Solves `inf σ_s(K_T − λV) = 0` for `T` on the graded grid.
pub fn chain_tc0(model: &InteractionModel, mu: f64, lambda: f64, opts: &ChainOptions) -> Result<f64> {
    let f = |t: f64| -> Result<f64> {
        let params = PhysParams::new(mu, t, 1);
        Ok(-bottom(KernelKind::K, 0.0, Sector::Symmetric, &params, model, lambda, opts)?)
    };
    Ok(bisect_temperature(f, 0.0, mu, None, opts.rel_tol)?.0)
}

pub fn chain_values(model: &InteractionModel, mu: f64, lambda: f64, opts: &ChainOptions) -> Result<ChainResult> {
    model.validate(1)?;
    if !model.has_nonnegative_transform(1) {
        return Err(Error::Precondition("the ordering needs a non-negative interaction".into()));
    }
    let tc0 = chain_tc0(model, mu, lambda, opts)?;
    let params = PhysParams::new(mu, tc0, 1);
    let a1 = bottom(KernelKind::K, 0.0, Sector::Symmetric, &params, model, lambda, opts)?;
    let inf_q = |kernel| {
        optimize_over_q(|q| bottom(kernel, q, Sector::Symmetric, &params, model, lambda, opts), mu, &opts.sup, false)
    };
    let a2 = inf_q(KernelKind::B)?.value;
    let r3 = inf_q(KernelKind::N)?;
    let a4 = a1.min(bottom(KernelKind::K, 0.0, Sector::Antisymmetric, &params, model, lambda, opts)?);
    Ok(ChainResult { lambda, tc0, a1, a2, a3: r3.value, a4, q3: r3.q_star })
}

pub fn verify_chain(model: &InteractionModel, mu: f64, lambdas: &[f64], opts: &ChainOptions) -> Result<BoundReport> {
    let mut report = BoundReport::new(
        "chain",
        format!("graded grid, {} nodes per panel, {} base panels, mu = {mu}", opts.nodes_per_panel, opts.base_panels),
    );
    let mut results = Vec::new();
    for &lambda in lambdas {
        let r = chain_values(model, mu, lambda, opts)?;
        let tol = 1e-4 * 2.0 * r.tc0;
        let a = r.values();
        // a₁ ≥ a₂ ≥ a₃ hold exactly on a shared grid; a₃ ≥ a₄ up to discretisation
        let slack = 1e-12 * tol;
        let ordered = a[0] >= a[1] - slack && a[1] >= a[2] - slack && a[2] >= a[3] - tol;
        let worst = a.iter().map(|v| v.abs()).fold(0.0, f64::max);
        report.margin(tol - worst);
        report.check(
            &format!("ordering_lambda_{lambda}"),
            ordered,
            format!("T_c0 = {:.9}, a = [{:.3e}, {:.3e}, {:.3e}, {:.3e}]", r.tc0, a[0], a[1], a[2], a[3]),
        );
        report.check(
            &format!("near_zero_lambda_{lambda}"),
            worst <= tol,
            format!("max |a_i| = {worst:.3e}, tolerance {tol:.3e}"),
        );
        results.push(r);
    }
    report.notes.push(serde_json::to_string(&results).unwrap_or_default());
    Ok(report.finish())
}
