//! Two-dimensional translation-invariant criterion by angular-momentum channels.
//!
//! In channel `m` the operator acts on radial functions with the kernel
//! `K_m(p, p') = (2π)⁻¹ ∫₀^{2π} V̂(|p − p'|) cos(mθ) dθ` and measure `p A(p) dp`.
//! The symmetric sector consists of the even channels.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::grid::base_breakpoints;
use super::top_eigenvalue;
use super::weighted_rule::composite_rule;
use super::GridOptions;
use crate::error::{Error, Result};
use crate::interactions::InteractionModel;
use crate::kernels::{k_t, PhysParams};
use crate::quadrature::integrals::{default_cutoff, thermal_breakpoints};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialTop {
    pub top: f64,
    pub channel: usize,
    pub channel_tops: Vec<(usize, f64)>,
}

/// Largest eigenvalue over even channels `m ≤ max_channel` of `(pA)^{1/2} K_m (pA)^{1/2}` with `A = 1/K_T`.
pub fn radial_top_k(
    params: &PhysParams,
    model: &InteractionModel,
    grid: &GridOptions,
    max_channel: usize,
) -> Result<RadialTop> {
    params.validate()?;
    if params.dim != 2 {
        return Err(Error::Domain("radial channel solver is two-dimensional".into()));
    }
    model.validate(2)?;
    let p_max = grid.p_max.unwrap_or_else(|| default_cutoff(params.mu));
    let bp = base_breakpoints(0.0, params.mu, p_max, grid.base_panels);
    let w = |p: f64| p / k_t(p, params);
    let hints = thermal_breakpoints(0.0, params.mu, params.temp);
    let rule = composite_rule(&w, &bp, &hints, grid.nodes_per_panel, grid.moment_tol)?;
    let n = rule.len();
    let n_theta = 256usize;
    let channels: Vec<usize> = (0..=max_channel).step_by(2).collect();
    let mut mats: Vec<DMatrix<f64>> = channels.iter().map(|_| DMatrix::zeros(n, n)).collect();
    let sw: Vec<f64> = rule.weights.iter().map(|x| x.sqrt()).collect();
    let h = 2.0 * PI / n_theta as f64;
    let cosines: Vec<Vec<f64>> =
        channels.iter().map(|&m| (0..n_theta).map(|i| (m as f64 * i as f64 * h).cos()).collect()).collect();
    let cos_theta: Vec<f64> = (0..n_theta).map(|i| (i as f64 * h).cos()).collect();
    let mut samples = vec![0.0; n_theta];
    for j in 0..n {
        for k in 0..=j {
            let (p, pp) = (rule.nodes[j], rule.nodes[k]);
            for (s, c) in samples.iter_mut().zip(&cos_theta) {
                let d2 = (p * p + pp * pp - 2.0 * p * pp * c).max(0.0);
                *s = model.v_hat(d2.sqrt(), 2);
            }
            for (ci, mat) in mats.iter_mut().enumerate() {
                let km: f64 = samples.iter().zip(&cosines[ci]).map(|(s, c)| s * c).sum::<f64>() * h / (2.0 * PI);
                let v = sw[j] * km * sw[k];
                mat[(j, k)] = v;
                mat[(k, j)] = v;
            }
        }
    }
    let mut channel_tops = Vec::with_capacity(channels.len());
    for (m, mat) in channels.iter().zip(&mats) {
        channel_tops.push((*m, top_eigenvalue(mat)?));
    }
    let (channel, top) = channel_tops
        .iter()
        .copied()
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    Ok(RadialTop { top, channel, channel_tops })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_one_dimension() {
        let p = PhysParams::new(1.0, 0.1, 1);
        assert!(radial_top_k(&p, &InteractionModel::gaussian(1.0, 1.0), &GridOptions::default(), 4).is_err());
    }

    #[test]
    fn s_wave_dominates_for_positive_transform() {
        let p = PhysParams::new(1.0, 0.05, 2);
        let r = radial_top_k(&p, &InteractionModel::gaussian(1.0, 1.0), &GridOptions::default(), 8).unwrap();
        assert_eq!(r.channel, 0);
        assert!(r.top > 0.0);
    }
}
