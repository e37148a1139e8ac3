//! Birman–Schwinger operators at fixed total momentum on the folded half-line.
//!
//! For a kernel `A(·, q) ∈ {1/K_T, B_T, N_T}` the operator
//! `A^{1/2} Ṽ A^{1/2}` with `Ṽ(p, p') = (2π)^{-1/2} [V̂(p − p') ± V̂(p + p')]`
//! is discretised by a Nyström rule for the measure `A(p) dp`, giving the
//! symmetric matrix `H_jk = √ω_j Ṽ(p_j, p_k) √ω_k`.

pub mod grid;
pub mod radial;
pub mod sup;
pub mod weighted_rule;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

pub use grid::MomentumGrid;
pub use sup::{scan_points, sup_over_q, optimize_over_q, SupOptions, SupResult};
pub use weighted_rule::WeightedRule;

use crate::error::{Error, Result};
use crate::interactions::InteractionModel;
use crate::kernels::{b_t, k_t, n_t, PhysParams};
use crate::quadrature::integrals::{default_cutoff, thermal_breakpoints};
use weighted_rule::{composite_rule, tail_rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    /// `1/K_T(p)`, total momentum zero only.
    K,
    B,
    N,
}

impl KernelKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k" => Some(Self::K),
            "b" => Some(Self::B),
            "n" => Some(Self::N),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    Symmetric,
    Antisymmetric,
}

impl Sector {
    fn sign(self) -> f64 {
        match self {
            Sector::Symmetric => 1.0,
            Sector::Antisymmetric => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Discretization {
    /// Gauss rules for the weight `A(p) dp` per panel.
    KernelWeighted,
    /// Gauss–Legendre panels, `ω = w · A`.
    Plain,
    /// Gauss–Legendre panels graded toward the Fermi breakpoints.
    PlainGraded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridOptions {
    pub nodes_per_panel: usize,
    pub base_panels: usize,
    pub p_max: Option<f64>,
    /// Add a `[P_max, ∞)` panel; `None` decides from the interaction.
    pub tail: Option<bool>,
    pub discretization: Discretization,
    pub moment_tol: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            nodes_per_panel: 12,
            base_panels: 6,
            p_max: None,
            tail: None,
            discretization: Discretization::KernelWeighted,
            moment_tol: 1e-10,
        }
    }
}

impl GridOptions {
    pub fn doubled(&self) -> Self {
        Self { nodes_per_panel: 2 * self.nodes_per_panel, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BsOperatorSpec {
    pub kernel: KernelKind,
    pub q: f64,
    pub sector: Sector,
    pub params: PhysParams,
    pub interaction: InteractionModel,
    pub grid: GridOptions,
}

impl BsOperatorSpec {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.params.dim != 1 {
            return Err(Error::Domain(
                "momentum-space Birman-Schwinger matrices are one-dimensional; use the radial solver for d = 2".into(),
            ));
        }
        self.interaction.validate(1)?;
        if self.kernel == KernelKind::K && self.q != 0.0 {
            return Err(Error::Precondition(format!("kernel K is defined at q = 0 only, got q = {}", self.q)));
        }
        if !self.q.is_finite() {
            return Err(Error::Domain("q must be finite".into()));
        }
        if self.grid.nodes_per_panel < 1 || self.grid.base_panels < 1 {
            return Err(Error::Domain("grid needs at least one node and one panel".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub kernel: KernelKind,
    pub sector: Sector,
    pub q: f64,
    pub top: f64,
    pub grid_size: usize,
    /// `|top(2n) − top(n)|` when the nodes per panel double.
    pub refinement_delta: f64,
}

/// `A(p, q)` for the chosen kernel.
pub fn kernel_value(kind: KernelKind, p: f64, q: f64, params: &PhysParams) -> f64 {
    match kind {
        KernelKind::K => 1.0 / k_t(p, params),
        KernelKind::B => b_t(p, q, params),
        KernelKind::N => n_t(p, q, params),
    }
}

/// Folded one-dimensional interaction kernel.
pub fn v_tilde(model: &InteractionModel, p: f64, pp: f64, sector: Sector) -> f64 {
    (model.v_hat(p - pp, 1) + sector.sign() * model.v_hat(p + pp, 1)) / (2.0 * PI).sqrt()
}

/// Nodes and effective weights `ω` of the discretised measure `A(p) dp` on `[0, ∞)`.
pub fn discretize(spec: &BsOperatorSpec) -> Result<WeightedRule> {
    spec.validate()?;
    let g = &spec.grid;
    let mu = spec.params.mu;
    let p_max = g.p_max.unwrap_or_else(|| default_cutoff(mu));
    let a = |p: f64| kernel_value(spec.kernel, p, spec.q, &spec.params);
    let mut rule = match g.discretization {
        Discretization::KernelWeighted => {
            let bp = grid::base_breakpoints(spec.q, mu, p_max, g.base_panels);
            let hints = thermal_breakpoints(spec.q, mu, spec.params.temp);
            composite_rule(&a, &bp, &hints, g.nodes_per_panel, g.moment_tol)?
        }
        Discretization::Plain | Discretization::PlainGraded => {
            let mg = if g.discretization == Discretization::Plain {
                MomentumGrid::plain(spec.q, mu, g.nodes_per_panel, g.base_panels, Some(p_max))
            } else {
                MomentumGrid::graded(spec.q, mu, spec.params.temp, g.nodes_per_panel, g.base_panels, Some(p_max))
            };
            let weights = mg.nodes.iter().zip(&mg.weights).map(|(&p, &w)| w * a(p)).collect();
            WeightedRule { nodes: mg.nodes, weights }
        }
    };
    if g.tail.unwrap_or(!spec.interaction.has_decaying_transform()) {
        let t = tail_rule(&a, p_max, g.nodes_per_panel, g.moment_tol)?;
        rule.nodes.extend(t.nodes);
        rule.weights.extend(t.weights);
    }
    if rule.weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::Numeric("kernel produced a non-finite or negative weight".into()));
    }
    Ok(rule)
}

/// `H_jk = √ω_j Ṽ(p_j, p_k) √ω_k`.
pub fn matrix_from_rule(rule: &WeightedRule, model: &InteractionModel, sector: Sector) -> DMatrix<f64> {
    let n = rule.len();
    let sw: Vec<f64> = rule.weights.iter().map(|w| w.sqrt()).collect();
    let mut h = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        for k in 0..=j {
            let v = sw[j] * v_tilde(model, rule.nodes[j], rule.nodes[k], sector) * sw[k];
            h[(j, k)] = v;
            h[(k, j)] = v;
        }
    }
    h
}

pub fn build_bs_matrix(spec: &BsOperatorSpec) -> Result<DMatrix<f64>> {
    let rule = discretize(spec)?;
    let h = matrix_from_rule(&rule, &spec.interaction, spec.sector);
    if h.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric("non-finite Birman-Schwinger matrix entry".into()));
    }
    Ok(h)
}

fn eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::Domain("matrix must be square".into()));
    }
    if m.nrows() == 0 {
        return Ok(vec![0.0]);
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric("non-finite matrix entry".into()));
    }
    let ev = m.clone().symmetric_eigenvalues();
    if ev.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric("symmetric eigensolver failed".into()));
    }
    Ok(ev.iter().copied().collect())
}

/// Largest eigenvalue of a real symmetric matrix (zero for an empty matrix).
pub fn top_eigenvalue(m: &DMatrix<f64>) -> Result<f64> {
    Ok(eigenvalues(m)?.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// Smallest eigenvalue of a real symmetric matrix.
pub fn bottom_eigenvalue(m: &DMatrix<f64>) -> Result<f64> {
    Ok(eigenvalues(m)?.into_iter().fold(f64::INFINITY, f64::min))
}

/// Top eigenvalue without refinement bookkeeping.
pub fn bs_top(spec: &BsOperatorSpec) -> Result<f64> {
    top_eigenvalue(&build_bs_matrix(spec)?)
}

/// Top eigenvalue together with its change under doubling of the nodes per panel.
pub fn solve_spectrum(spec: &BsOperatorSpec) -> Result<SpectrumResult> {
    let rule = discretize(spec)?;
    let top = top_eigenvalue(&matrix_from_rule(&rule, &spec.interaction, spec.sector))?;
    let fine = BsOperatorSpec { grid: spec.grid.doubled(), ..*spec };
    let top2 = bs_top(&fine)?;
    Ok(SpectrumResult {
        kernel: spec.kernel,
        sector: spec.sector,
        q: spec.q,
        top,
        grid_size: rule.len(),
        refinement_delta: (top2 - top).abs(),
    })
}

/// Bottom eigenvalue of `diag(1/A) − λ √w Ṽ √w` on a plain grid, i.e. of the
/// discretised `A⁻¹ − λV` at total momentum `q`.
pub fn criterion_bottom(
    kernel: KernelKind,
    q: f64,
    sector: Sector,
    params: &PhysParams,
    model: &InteractionModel,
    lambda: f64,
    grid: &MomentumGrid,
) -> Result<f64> {
    if kernel == KernelKind::K && q != 0.0 {
        return Err(Error::Precondition("kernel K is defined at q = 0 only".into()));
    }
    let n = grid.len();
    let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
    let mut s = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        for k in 0..=j {
            let v = -lambda * sw[j] * v_tilde(model, grid.nodes[j], grid.nodes[k], sector) * sw[k];
            s[(j, k)] = v;
            s[(k, j)] = v;
        }
        s[(j, j)] += 1.0 / kernel_value(kernel, grid.nodes[j], q, params);
    }
    bottom_eigenvalue(&s)
}
