//! Plain Gauss–Legendre panel grids on the folded half-line `[0, P_max]`.

use serde::{Deserialize, Serialize};

use crate::quadrature::gauss_legendre::gauss_legendre;
use crate::quadrature::integrals::{default_cutoff, fermi_breakpoints, thermal_breakpoints};
use crate::quadrature::panel::clip_breakpoints;

/// Quadrature nodes and weights for `∫₀^{P_max} g(p) dp`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub p_max: f64,
    pub panels: Vec<(f64, f64)>,
    pub nodes_per_panel: usize,
}

/// Uniform base panels merged with the Fermi breakpoints of total momentum `q`.
pub fn base_breakpoints(q: f64, mu: f64, p_max: f64, base_panels: usize) -> Vec<f64> {
    let mut pts = fermi_breakpoints(q, mu);
    let n = base_panels.max(1);
    pts.extend((1..n).map(|k| p_max * k as f64 / n as f64));
    clip_breakpoints(0.0, p_max, &pts)
}

impl MomentumGrid {
    pub fn from_breakpoints(breakpoints: &[f64], nodes_per_panel: usize) -> Self {
        let rule = gauss_legendre(nodes_per_panel);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut panels = Vec::new();
        for w in breakpoints.windows(2) {
            if w[1] <= w[0] {
                continue;
            }
            panels.push((w[0], w[1]));
            for (x, wt) in rule.mapped(w[0], w[1]) {
                nodes.push(x);
                weights.push(wt);
            }
        }
        let p_max = breakpoints.last().copied().unwrap_or(0.0);
        Self { nodes, weights, p_max, panels, nodes_per_panel }
    }

    /// `base_panels` uniform panels plus the breakpoints `{0, |√μ−q|, √μ, √μ+q}`.
    pub fn plain(q: f64, mu: f64, nodes_per_panel: usize, base_panels: usize, p_max: Option<f64>) -> Self {
        let p_max = p_max.unwrap_or_else(|| default_cutoff(mu));
        Self::from_breakpoints(&base_breakpoints(q, mu, p_max, base_panels), nodes_per_panel)
    }

    /// As [`MomentumGrid::plain`] with panels graded geometrically (ratio 1/4)
    /// toward every Fermi breakpoint down to the thermal width `T/(8√μ)`.
    pub fn graded(
        q: f64,
        mu: f64,
        temp: f64,
        nodes_per_panel: usize,
        base_panels: usize,
        p_max: Option<f64>,
    ) -> Self {
        let p_max = p_max.unwrap_or_else(|| default_cutoff(mu));
        let mut pts = base_breakpoints(q, mu, p_max, base_panels);
        pts.extend(thermal_breakpoints(q, mu, temp));
        Self::from_breakpoints(&clip_breakpoints(0.0, p_max, &pts), nodes_per_panel)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_cutoff() {
        let g = MomentumGrid::plain(0.3, 1.0, 24, 6, None);
        let s: f64 = g.weights.iter().sum();
        assert!(((s - g.p_max) / g.p_max).abs() < 1e-12);
        assert!(g.nodes.windows(2).all(|w| w[0] < w[1]));
        let g = MomentumGrid::graded(0.3, 1.0, 1e-4, 8, 6, None);
        let s: f64 = g.weights.iter().sum();
        assert!(((s - g.p_max) / g.p_max).abs() < 1e-12);
    }

    #[test]
    fn breakpoints_include_fermi_points() {
        let b = base_breakpoints(0.25, 1.0, 8.0, 4);
        for p in [0.0, 0.75, 1.0, 1.25, 2.0, 8.0] {
            assert!(b.contains(&p), "{p} missing from {b:?}");
        }
    }
}
