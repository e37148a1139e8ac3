//! Critical temperatures `T_c⁰`, `T_l`, `T_u` by bisection in `ln T`, coupling
//! sweeps, and weak-coupling slope fits.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bs_spectra::radial::radial_top_k;
use crate::bs_spectra::{
    bs_top, solve_spectrum, sup_over_q, BsOperatorSpec, GridOptions, KernelKind, Sector, SupOptions,
};
use crate::error::{Error, Result};
use crate::interactions::{sphere_operator_spectrum, InteractionModel};
use crate::kernels::PhysParams;
use crate::quadrature::integrals::integrate_n_t_fullline;
use crate::quadrature::panel::PanelScheme;

/// Lowest and highest temperatures, in units of `μ`, the bracket may expand to.
pub const BRACKET_LIMITS: (f64, f64) = (1e-9, 1e3);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Tc0,
    Tl,
    Tu,
}

impl Target {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tc0" | "tc" => Some(Self::Tc0),
            "tl" => Some(Self::Tl),
            "tu" => Some(Self::Tu),
            _ => None,
        }
    }

    pub fn kernel(self) -> KernelKind {
        match self {
            Self::Tc0 => KernelKind::K,
            Self::Tl => KernelKind::B,
            Self::Tu => KernelKind::N,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Tc0 => "tc0",
            Self::Tl => "tl",
            Self::Tu => "tu",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveSpec {
    pub lambda: f64,
    pub target: Target,
    /// `temp` is ignored; `mu` and `dim` are used.
    pub params: PhysParams,
    pub interaction: InteractionModel,
    pub grid: GridOptions,
    pub sup: SupOptions,
    /// Relative width of the final temperature bracket.
    pub rel_tol: f64,
    /// Initial bracket in absolute temperature; expanded automatically.
    pub bracket: Option<(f64, f64)>,
}

impl SolveSpec {
    pub fn new(lambda: f64, target: Target, mu: f64, interaction: InteractionModel) -> Self {
        Self {
            lambda,
            target,
            params: PhysParams::new(mu, 1.0, 1),
            interaction,
            grid: GridOptions::default(),
            sup: SupOptions::default(),
            rel_tol: 1e-6,
            bracket: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::Domain(format!("coupling must be positive, got {}", self.lambda)));
        }
        if !(self.params.mu > 0.0 && self.params.mu.is_finite()) {
            return Err(Error::Precondition(format!("critical temperatures need mu > 0, got {}", self.params.mu)));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::Domain("rel_tol must be positive".into()));
        }
        if self.params.dim == 2 && self.target != Target::Tc0 {
            return Err(Error::Domain("in two dimensions only the translation-invariant T_c0 is available".into()));
        }
        if self.params.dim == 3 {
            return Err(Error::Domain("critical temperatures are solved for d = 1 (and T_c0 in d = 2)".into()));
        }
        self.interaction.validate(self.params.dim)
    }
}

/// Value of the criterion at one temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriterionValue {
    pub value: f64,
    pub q_star: Option<f64>,
    pub boundary_warning: bool,
}

/// `sup σ_s` of the relevant Birman–Schwinger operator at temperature `temp`.
pub fn criterion(spec: &SolveSpec, temp: f64) -> Result<CriterionValue> {
    let params = spec.params.with_temp(temp);
    if params.dim == 2 {
        let r = radial_top_k(&params, &spec.interaction, &spec.grid, 8)?;
        return Ok(CriterionValue { value: r.top, q_star: Some(0.0), boundary_warning: false });
    }
    match spec.target {
        Target::Tc0 => {
            let s = BsOperatorSpec {
                kernel: KernelKind::K,
                q: 0.0,
                sector: Sector::Symmetric,
                params,
                interaction: spec.interaction,
                grid: spec.grid,
            };
            Ok(CriterionValue { value: bs_top(&s)?, q_star: None, boundary_warning: false })
        }
        Target::Tl | Target::Tu => {
            let r = sup_over_q(spec.target.kernel(), &params, &spec.interaction, Sector::Symmetric, &spec.grid, &spec.sup)?;
            Ok(CriterionValue { value: r.value, q_star: Some(r.q_star), boundary_warning: r.boundary_warning })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TcResult {
    pub target: Target,
    pub lambda: f64,
    pub temp: f64,
    pub iterations: usize,
    pub q_star: Option<f64>,
    /// `|criterion(temp) − 1/λ|`.
    pub residual: f64,
    pub bracket: (f64, f64),
    /// Change of the criterion at the solution when the nodes per panel double.
    pub refinement_delta: f64,
    /// The sampled criterion values were non-increasing in `T`.
    pub monotone: bool,
    pub boundary_warning: bool,
}

/// Bisection in `ln T` for a criterion decreasing in `T`, crossing `level`.
pub fn bisect_temperature<F>(
    mut f: F,
    level: f64,
    mu: f64,
    bracket: Option<(f64, f64)>,
    rel_tol: f64,
) -> Result<(f64, (f64, f64), usize, bool)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let t_min = BRACKET_LIMITS.0 * mu;
    let t_max = BRACKET_LIMITS.1 * mu;
    let (mut lo, mut hi) = bracket.unwrap_or((1e-3 * mu, 1e-1 * mu));
    lo = lo.max(t_min);
    hi = hi.min(t_max);
    let mut samples: Vec<(f64, f64)> = Vec::new();
    let mut eval = |t: f64, samples: &mut Vec<(f64, f64)>| -> Result<f64> {
        let v = f(t)? - level;
        samples.push((t, v));
        Ok(v)
    };
    let no_root = || Error::NoRoot { target: level, t_min, t_max };
    let mut g_hi = eval(hi, &mut samples)?;
    while g_hi > 0.0 {
        if hi >= t_max {
            return Err(no_root());
        }
        lo = hi;
        hi = (hi * 10.0).min(t_max);
        g_hi = eval(hi, &mut samples)?;
    }
    let mut g_lo = if samples.iter().any(|s| s.0 == lo) {
        samples.iter().find(|s| s.0 == lo).unwrap().1
    } else {
        eval(lo, &mut samples)?
    };
    while g_lo < 0.0 {
        if lo <= t_min {
            return Err(no_root());
        }
        hi = lo;
        lo = (lo / 10.0).max(t_min);
        g_lo = eval(lo, &mut samples)?;
    }
    let mut iterations = 0;
    while (hi / lo).ln() > rel_tol {
        let mid = (lo * hi).sqrt();
        let g = eval(mid, &mut samples)?;
        iterations += 1;
        if g >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = samples.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12 * w[0].1.abs().max(level));
    Ok(((lo * hi).sqrt(), (lo, hi), iterations, monotone))
}

/// Solves `criterion(T) = 1/λ`.
pub fn solve(spec: &SolveSpec) -> Result<TcResult> {
    spec.validate()?;
    let level = 1.0 / spec.lambda;
    let (temp, bracket, iterations, monotone) =
        bisect_temperature(|t| criterion(spec, t).map(|c| c.value), level, spec.params.mu, spec.bracket, spec.rel_tol)?;
    let at = criterion(spec, temp)?;
    let refinement_delta = refinement_at(spec, temp, at.q_star)?;
    Ok(TcResult {
        target: spec.target,
        lambda: spec.lambda,
        temp,
        iterations,
        q_star: at.q_star,
        residual: (at.value - level).abs(),
        bracket,
        refinement_delta,
        monotone,
        boundary_warning: at.boundary_warning,
    })
}

fn refinement_at(spec: &SolveSpec, temp: f64, q_star: Option<f64>) -> Result<f64> {
    let params = spec.params.with_temp(temp);
    if params.dim == 2 {
        let a = radial_top_k(&params, &spec.interaction, &spec.grid, 8)?.top;
        let b = radial_top_k(&params, &spec.interaction, &spec.grid.doubled(), 8)?.top;
        return Ok((a - b).abs());
    }
    let s = BsOperatorSpec {
        kernel: spec.target.kernel(),
        q: q_star.unwrap_or(0.0),
        sector: Sector::Symmetric,
        params,
        interaction: spec.interaction,
        grid: spec.grid,
    };
    Ok(solve_spectrum(&s)?.refinement_delta)
}

pub fn solve_tc0(spec: &SolveSpec) -> Result<TcResult> {
    solve(&SolveSpec { target: Target::Tc0, ..*spec })
}

pub fn solve_tl(spec: &SolveSpec) -> Result<TcResult> {
    solve(&SolveSpec { target: Target::Tl, ..*spec })
}

pub fn solve_tu(spec: &SolveSpec) -> Result<TcResult> {
    solve(&SolveSpec { target: Target::Tu, ..*spec })
}

/// `T_c⁰` for `λ a δ` from the scalar criterion `(λ a / 2π) ∫_ℝ K_T⁻¹ dp = 1`.
pub fn delta_rank_one_tc0(amplitude: f64, lambda: f64, mu: f64, rel_tol: f64) -> Result<TcResult> {
    if !(amplitude > 0.0 && lambda > 0.0 && mu > 0.0) {
        return Err(Error::Domain("rank-one criterion needs positive amplitude, coupling and mu".into()));
    }
    let scheme = PanelScheme::default().with_tol(1e-14, 1e-13);
    let crit = |t: f64| -> Result<f64> {
        let full = integrate_n_t_fullline(0.0, &PhysParams::new(mu, t, 1), &scheme)?;
        Ok(amplitude * full.value / (2.0 * std::f64::consts::PI))
    };
    let level = 1.0 / lambda;
    let (temp, bracket, iterations, monotone) = bisect_temperature(crit, level, mu, None, rel_tol)?;
    Ok(TcResult {
        target: Target::Tc0,
        lambda,
        temp,
        iterations,
        q_star: None,
        residual: (crit(temp)? - level).abs(),
        bracket,
        refinement_delta: 0.0,
        monotone,
        boundary_warning: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub lambda: f64,
    pub temp: f64,
    pub ln_ratio: f64,
    pub q_star: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub r_squared: f64,
    /// Couplings entering the fit.
    pub lambdas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub target: Target,
    pub records: Vec<SweepRecord>,
    pub fit: SlopeFit,
    pub predicted_slope: Option<f64>,
    /// `true` for the two-dimensional channel heuristic.
    pub heuristic: bool,
}

pub const DEFAULT_LAMBDAS: [f64; 7] = [0.6, 0.5, 0.42, 0.36, 0.31, 0.27, 0.24];

/// Least squares `y = s·x + c` with standard error of `s` and `R²`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64, f64)> {
    let n = x.len();
    if n < 3 || n != y.len() {
        return Err(Error::Fit(format!("need at least 3 paired points, got {n}")));
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::Fit("abscissae are all equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x.iter().zip(y).map(|(a, b)| (b - slope * a - intercept).powi(2)).sum();
    let stderr = (sse / (nf - 2.0) / sxx).sqrt();
    let r2 = if syy > 0.0 { 1.0 - sse / syy } else { 1.0 };
    Ok((slope, intercept, stderr, r2))
}

/// Fits `ln(μ/T) = s/λ + c` on the smallest half (at least four) of the couplings.
pub fn fit_slope(records: &[SweepRecord]) -> Result<SlopeFit> {
    if records.len() < 4 {
        return Err(Error::Fit(format!("fewer than 4 solvable points ({})", records.len())));
    }
    let mut sorted: Vec<&SweepRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    let k = records.len().div_ceil(2).max(4);
    let window = &sorted[..k];
    let x: Vec<f64> = window.iter().map(|r| 1.0 / r.lambda).collect();
    let y: Vec<f64> = window.iter().map(|r| r.ln_ratio).collect();
    let (slope, intercept, stderr, r_squared) = linear_fit(&x, &y)?;
    Ok(SlopeFit { slope, intercept, stderr, r_squared, lambdas: window.iter().map(|r| r.lambda).collect() })
}

/// Solves every coupling (in parallel, output ordered as given) and fits the slope.
pub fn weak_coupling_sweep(lambdas: &[f64], base: &SolveSpec) -> Result<SweepResult> {
    if lambdas.is_empty() {
        return Err(Error::Domain("empty coupling list".into()));
    }
    let results: Vec<Result<TcResult>> =
        lambdas.par_iter().map(|&lambda| solve(&SolveSpec { lambda, ..*base })).collect();
    let mut records = Vec::with_capacity(lambdas.len());
    for r in results {
        match r {
            Ok(t) => records.push(SweepRecord {
                lambda: t.lambda,
                temp: t.temp,
                ln_ratio: (base.params.mu / t.temp).ln(),
                q_star: t.q_star,
            }),
            Err(Error::NoRoot { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let fit = fit_slope(&records)?;
    let predicted_slope = sphere_operator_spectrum(&base.interaction, base.params.mu, base.params.dim)
        .ok()
        .map(|s| match base.target {
            Target::Tu => s.slope_upper(),
            _ => s.slope_lower(),
        });
    Ok(SweepResult { target: base.target, records, fit, predicted_slope, heuristic: base.params.dim == 2 })
}
