//! Gap between the supremum over `q` of the symmetric `N`-kernel norm and its value at `q`.

use serde::{Deserialize, Serialize};

use crate::bs_spectra::{bs_top, sup_over_q, BsOperatorSpec, GridOptions, KernelKind, Sector, SupOptions};
use crate::critical_temps::linear_fit;
use crate::error::{Error, Result};
use crate::interactions::InteractionModel;
use crate::kernels::PhysParams;

fn top_n(params: &PhysParams, q: f64, model: &InteractionModel, grid: &GridOptions) -> Result<f64> {
    bs_top(&BsOperatorSpec {
        kernel: KernelKind::N,
        q,
        sector: Sector::Symmetric,
        params: *params,
        interaction: *model,
        grid: *grid,
    })
}

/// `E_T(q) = sup_{q′} ‖·‖_s(q′) − ‖·‖_s(q)` for the `N` kernel. Needs `V ≥ 0`.
pub fn e_gap(params: &PhysParams, q: f64, model: &InteractionModel, grid: &GridOptions, sup: &SupOptions) -> Result<f64> {
    if !model.is_nonnegative() {
        return Err(Error::Precondition(format!("{} is not a non-negative potential", model.name())));
    }
    let s = sup_over_q(KernelKind::N, params, model, Sector::Symmetric, grid, sup)?;
    Ok(s.value - top_n(params, q, model, grid)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSweep {
    pub q: f64,
    pub temps: Vec<f64>,
    pub values: Vec<f64>,
    /// Slope of `E_T(q)` against `ln(μ/T)`.
    pub c1: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// `E_T(q)` over `temps` with a linear fit in `ln(μ/T)`.
pub fn e_gap_sweep(
    mu: f64,
    q: f64,
    temps: &[f64],
    model: &InteractionModel,
    grid: &GridOptions,
    sup: &SupOptions,
) -> Result<GapSweep> {
    let values = temps
        .iter()
        .map(|&t| e_gap(&PhysParams::new(mu, t, 1), q, model, grid, sup))
        .collect::<Result<Vec<_>>>()?;
    let x: Vec<f64> = temps.iter().map(|t| (mu / t).ln()).collect();
    let (c1, intercept, _, r_squared) = linear_fit(&x, &values)?;
    Ok(GapSweep { q, temps: temps.to_vec(), values, c1, intercept, r_squared })
}
