//! Pair interactions with closed-form Fourier transforms and the Fermi-sphere operator.
//!
//! Transforms use `V̂(k) = (2π)^{-d/2} ∫ e^{-ik·r} V(r) dr`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre::{gauss_legendre, legendre_all};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InteractionModel {
    /// `a · exp(−r²/2w²)`
    Gaussian { amplitude: f64, width: f64 },
    /// `a1 · exp(−r²/2w1²) − a2 · exp(−r²/2w2²)`
    GaussianDifference { a1: f64, w1: f64, a2: f64, w2: f64 },
    /// `a · χ(|r| < R)`
    SquareWell { amplitude: f64, radius: f64 },
    /// `a · δ(r)`, one dimension only.
    Delta { amplitude: f64 },
}

impl InteractionModel {
    pub fn gaussian(amplitude: f64, width: f64) -> Self {
        Self::Gaussian { amplitude, width }
    }

    pub fn delta(amplitude: f64) -> Self {
        Self::Delta { amplitude }
    }

    pub fn square_well(amplitude: f64, radius: f64) -> Self {
        Self::SquareWell { amplitude, radius }
    }

    /// Gaussian difference with widths `w1`, `w2` whose amplitudes are fixed by
    /// prescribing `V̂(0) = v0` and `V̂(2√μ) = v2` in one dimension.
    pub fn from_sign_targets(w1: f64, w2: f64, v0: f64, v2: f64, mu: f64) -> Result<Self> {
        if !(w1 > 0.0 && w2 > 0.0 && mu > 0.0) {
            return Err(Error::Domain("widths and mu must be positive".into()));
        }
        let k2 = 4.0 * mu;
        let (g1, g2) = ((-0.5 * w1 * w1 * k2).exp(), (-0.5 * w2 * w2 * k2).exp());
        // [w1, -w2; w1 g1, -w2 g2] (a1, a2)ᵀ = (v0, v2)ᵀ
        let det = -w1 * w2 * g2 + w1 * w2 * g1;
        if det.abs() < 1e-14 {
            return Err(Error::Numeric("sign-target system is singular (equal widths?)".into()));
        }
        let a1 = (-w2 * g2 * v0 + w2 * v2) / det;
        let a2 = (w1 * v2 - w1 * g1 * v0) / det;
        Ok(Self::GaussianDifference { a1, w1, a2, w2 })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::GaussianDifference { .. } => "gaussian_difference",
            Self::SquareWell { .. } => "square_well",
            Self::Delta { .. } => "delta",
        }
    }

    /// `true` when `V̂(k)` tends to zero fast enough that a finite momentum cutoff suffices.
    pub fn has_decaying_transform(&self) -> bool {
        matches!(self, Self::Gaussian { .. } | Self::GaussianDifference { .. })
    }

    fn parameters(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Self::Gaussian { amplitude, width } => vec![("amplitude", amplitude), ("width", width)],
            Self::GaussianDifference { a1, w1, a2, w2 } => {
                vec![("a1", a1), ("w1", w1), ("a2", a2), ("w2", w2)]
            }
            Self::SquareWell { amplitude, radius } => vec![("amplitude", amplitude), ("radius", radius)],
            Self::Delta { amplitude } => vec![("amplitude", amplitude)],
        }
    }

    /// `V(r) ≥ 0` for every `r`.
    pub fn is_nonnegative(&self) -> bool {
        match *self {
            Self::Gaussian { amplitude, .. } | Self::SquareWell { amplitude, .. } | Self::Delta { amplitude } => {
                amplitude >= 0.0
            }
            Self::GaussianDifference { a1, w1, a2, w2 } => a2 <= 0.0 || (a1 >= a2 && w1 >= w2),
        }
    }

    /// `V̂(k) ≥ 0` for every `k` in dimension `dim`.
    pub fn has_nonnegative_transform(&self, dim: usize) -> bool {
        match *self {
            Self::Gaussian { amplitude, .. } | Self::Delta { amplitude } => amplitude >= 0.0,
            Self::SquareWell { amplitude, .. } => amplitude == 0.0,
            Self::GaussianDifference { a1, w1, a2, w2 } => {
                let d = dim as i32;
                a2 <= 0.0 || (a1 * w1.powi(d) >= a2 * w2.powi(d) && w1 <= w2)
            }
        }
    }

    /// Parameter sanity and dimension admissibility.
    pub fn validate(&self, dim: usize) -> Result<()> {
        let report = validate_assumption1(self, dim);
        match report.checks.iter().find(|c| !c.pass) {
            None => Ok(()),
            Some(c) => Err(Error::Domain(format!("{}: {}", c.name, c.detail))),
        }
    }

    /// Fourier transform at momentum modulus `k` in dimension `dim`.
    pub fn v_hat(&self, k: f64, dim: usize) -> f64 {
        let d = dim as i32;
        match *self {
            Self::Gaussian { amplitude, width } => gaussian_hat(amplitude, width, k, d),
            Self::GaussianDifference { a1, w1, a2, w2 } => {
                gaussian_hat(a1, w1, k, d) - gaussian_hat(a2, w2, k, d)
            }
            Self::SquareWell { amplitude, radius } => square_well_hat(amplitude, radius, k.abs(), dim),
            Self::Delta { amplitude } => amplitude / (2.0 * PI).sqrt(),
        }
    }

    /// `‖V‖₁`.
    pub fn l1_norm(&self, dim: usize) -> f64 {
        let d = dim as i32;
        let g = |a: f64, w: f64| a.abs() * (2.0 * PI).powi(d).sqrt() * w.powi(d);
        match *self {
            Self::Gaussian { amplitude, width } => g(amplitude, width),
            Self::GaussianDifference { a1, w1, a2, w2 } => {
                // bound, exact only when the difference does not change sign
                g(a1, w1) + g(a2, w2)
            }
            Self::SquareWell { amplitude, radius } => {
                let vol = match dim {
                    1 => 2.0 * radius,
                    2 => PI * radius * radius,
                    _ => 4.0 / 3.0 * PI * radius.powi(3),
                };
                amplitude.abs() * vol
            }
            Self::Delta { amplitude } => amplitude.abs(),
        }
    }
}

fn gaussian_hat(a: f64, w: f64, k: f64, d: i32) -> f64 {
    a * w.powi(d) * (-0.5 * w * w * k * k).exp()
}

fn square_well_hat(a: f64, r: f64, k: f64, dim: usize) -> f64 {
    let x = k * r;
    match dim {
        1 => {
            let sinc = if x.abs() < 1e-8 { 1.0 - x * x / 6.0 } else { x.sin() / x };
            2.0 * a * r * sinc / (2.0 * PI).sqrt()
        }
        2 => {
            let j1_over_x = if x.abs() < 1e-8 { 0.5 - x * x / 16.0 } else { bessel_j1(x) / x };
            a * r * r * j1_over_x
        }
        _ => {
            let g = if x.abs() < 1e-3 {
                let x2 = x * x;
                1.0 / 3.0 - x2 / 30.0 + x2 * x2 / 840.0
            } else {
                (x.sin() - x * x.cos()) / (x * x * x)
            };
            4.0 * PI * a * r.powi(3) * g / (2.0 * PI).powf(1.5)
        }
    }
}

/// `J₁(x) = (2π)⁻¹ ∫₀^{2π} cos(τ − x sin τ) dτ` by the periodic trapezoid rule.
pub fn bessel_j1(x: f64) -> f64 {
    let n = 64 + 2 * (x.abs().ceil() as usize);
    let h = 2.0 * PI / n as f64;
    (0..n).map(|i| {
        let t = i as f64 * h;
        (t - x * t.sin()).cos()
    })
    .sum::<f64>()
        / n as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assumption1Report {
    pub interaction: String,
    pub dim: usize,
    pub pass: bool,
    pub checks: Vec<Check>,
}

/// Admissibility of `model` as a pair interaction in dimension `dim`.
pub fn validate_assumption1(model: &InteractionModel, dim: usize) -> Assumption1Report {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(Check { name: name.to_string(), pass, detail })
    };
    push(
        "dimension",
        (1..=3).contains(&dim),
        format!("d = {dim}, admissible values are 1, 2, 3"),
    );
    let params = model.parameters();
    let finite = params.iter().all(|(_, v)| v.is_finite());
    push(
        "finite_parameters",
        finite,
        params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", "),
    );
    let positive_lengths = match *model {
        InteractionModel::Gaussian { width, .. } => width > 0.0,
        InteractionModel::GaussianDifference { w1, w2, .. } => w1 > 0.0 && w2 > 0.0,
        InteractionModel::SquareWell { radius, .. } => radius > 0.0,
        InteractionModel::Delta { .. } => true,
    };
    push("positive_lengths", positive_lengths, "widths and radii must be positive".into());
    push("reflection_symmetric", true, "radial by construction".into());
    match model {
        InteractionModel::Delta { .. } => push(
            "integrability",
            dim == 1,
            if dim == 1 {
                "finite point measure".into()
            } else {
                "measure interactions admitted only for d=1".into()
            },
        ),
        InteractionModel::SquareWell { .. } => push(
            "integrability",
            true,
            "bounded with compact support, in every L^p".into(),
        ),
        _ => push("integrability", true, "Schwartz function".into()),
    }
    if dim == 1 {
        push("second_moment", true, "(1 + r²) V is integrable".into());
    }
    let pass = checks.iter().all(|c| c.pass);
    Assumption1Report { interaction: model.name().to_string(), dim, pass, checks }
}

/// Extremal eigenvalues of the interaction restricted to the Fermi sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereSpectrum {
    pub dim: usize,
    pub mu: f64,
    pub e_s: f64,
    pub e_a: f64,
    /// `2 V̂(0) / (2π)^{1/2}`, only meaningful in one dimension.
    pub e0_s: Option<f64>,
    /// Fourier (d = 2) or Legendre (d = 3) eigenvalues, indexed by mode.
    pub modes: Vec<f64>,
    /// Largest magnitude among the last quarter of `modes`.
    pub tail: f64,
}

impl SphereSpectrum {
    /// `√μ / e_s`, the weak-coupling slope of `ln(μ/T)` against `1/λ` for `T_l`.
    pub fn slope_lower(&self) -> f64 {
        self.mu.powf(1.0 - 0.5 * self.dim as f64) / self.e_s
    }

    /// `√μ / max(e_s, e0_s/2)` for `T_u` in one dimension.
    pub fn slope_upper(&self) -> f64 {
        let e = match self.e0_s {
            Some(e0) => self.e_s.max(0.5 * e0),
            None => self.e_s,
        };
        self.mu.powf(1.0 - 0.5 * self.dim as f64) / e
    }
}

pub const DEFAULT_SPHERE_MODES: usize = 64;

pub fn sphere_operator_spectrum(model: &InteractionModel, mu: f64, dim: usize) -> Result<SphereSpectrum> {
    sphere_operator_spectrum_with(model, mu, dim, DEFAULT_SPHERE_MODES)
}

/// As [`sphere_operator_spectrum`] with an explicit number of modes for `d ∈ {2, 3}`.
pub fn sphere_operator_spectrum_with(
    model: &InteractionModel,
    mu: f64,
    dim: usize,
    n_modes: usize,
) -> Result<SphereSpectrum> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Domain(format!("sphere operator needs mu > 0, got {mu}")));
    }
    model.validate(dim)?;
    let root = (2.0 * PI).sqrt();
    match dim {
        1 => {
            let v0 = model.v_hat(0.0, 1);
            let v2 = model.v_hat(2.0 * mu.sqrt(), 1);
            Ok(SphereSpectrum {
                dim,
                mu,
                e_s: (v0 + v2) / root,
                e_a: (v0 - v2) / root,
                e0_s: Some(2.0 * v0 / root),
                modes: vec![(v0 + v2) / root, (v0 - v2) / root],
                tail: 0.0,
            })
        }
        2 | 3 => {
            let n_modes = n_modes.max(4);
            let coarse = sphere_modes(model, mu, dim, n_modes);
            let fine = sphere_modes(model, mu, dim, 2 * n_modes);
            let (s1, a1) = sector_maxima(&coarse);
            let (s2, a2) = sector_maxima(&fine);
            let scale = s2.abs().max(a2.abs()).max(1e-300);
            let delta = (s1 - s2).abs().max((a1 - a2).abs());
            let tail = coarse[3 * n_modes / 4..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if delta > 1e-10 * scale.max(1.0) {
                return Err(Error::Accuracy { estimate: s2, bound: delta });
            }
            Ok(SphereSpectrum { dim, mu, e_s: s1, e_a: a1, e0_s: None, modes: coarse, tail })
        }
        _ => Err(Error::Domain(format!("dimension must be 1, 2 or 3, got {dim}"))),
    }
}

fn sector_maxima(modes: &[f64]) -> (f64, f64) {
    let even = modes.iter().step_by(2).copied().fold(f64::NEG_INFINITY, f64::max);
    let odd = modes.iter().skip(1).step_by(2).copied().fold(f64::NEG_INFINITY, f64::max);
    (even, odd)
}

fn sphere_modes(model: &InteractionModel, mu: f64, dim: usize, n_modes: usize) -> Vec<f64> {
    let sm = mu.sqrt();
    if dim == 2 {
        // λ_m = ∫₀^{2π} (2π)⁻¹ V̂(2√μ sin(θ/2)) cos(mθ) dθ
        let n = 8 * n_modes + 64;
        let h = 2.0 * PI / n as f64;
        let samples: Vec<f64> = (0..n)
            .map(|i| model.v_hat(2.0 * sm * (0.5 * i as f64 * h).sin(), 2) / (2.0 * PI))
            .collect();
        (0..n_modes)
            .map(|m| {
                samples
                    .iter()
                    .enumerate()
                    .map(|(i, v)| v * (m as f64 * i as f64 * h).cos())
                    .sum::<f64>()
                    * h
            })
            .collect()
    } else {
        // Funk–Hecke: λ_ℓ = 2π ∫_{-1}^{1} P_ℓ(t) (2π)^{-3/2} V̂(√μ √(2 − 2t)) dt
        let rule = gauss_legendre(2 * n_modes + 64);
        let mut out = vec![0.0; n_modes];
        let mut p = vec![0.0; n_modes];
        let c = 2.0 * PI / (2.0 * PI).powf(1.5);
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let v = model.v_hat(sm * (2.0 - 2.0 * t).max(0.0).sqrt(), 3);
            legendre_all(t, &mut p);
            for (o, pl) in out.iter_mut().zip(&p) {
                *o += c * w * v * pl;
            }
        }
        out
    }
}
