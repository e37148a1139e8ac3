//! Scalar kernels of the two linear criteria.
//!
//! Units are ħ = 2m = 1 so the dispersion is `p² − μ`. All functions are
//! pure and depend only on the moduli of relative momentum `p` and total
//! momentum half-coordinate `q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Crossover in the scaled variable below which Taylor branches are used.
pub const SERIES_CROSSOVER: f64 = 1e-6;

/// Chemical potential, temperature and dimension of one computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    pub mu: f64,
    pub temp: f64,
    pub dim: usize,
}

impl PhysParams {
    pub fn new(mu: f64, temp: f64, dim: usize) -> Self {
        Self { mu, temp, dim }
    }

    pub fn with_temp(self, temp: f64) -> Self {
        Self { temp, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(Error::Domain(format!("mu must be finite, got {}", self.mu)));
        }
        if !(self.temp.is_finite() && self.temp > 0.0) {
            return Err(Error::Domain(format!("temperature must be positive, got {}", self.temp)));
        }
        if !(1..=3).contains(&self.dim) {
            return Err(Error::Domain(format!("dimension must be 1, 2 or 3, got {}", self.dim)));
        }
        Ok(())
    }
}

/// `x / tanh(x / 2T)`, the symbol of `K_T` at energy `x`.
///
/// Even in `x`, bounded below by `2T` with equality only at `x = 0`.
pub fn chi_ratio(x: f64, temp: f64) -> Result<f64> {
    if !x.is_finite() || !temp.is_finite() {
        return Err(Error::Domain(format!("chi_ratio needs finite input, got x={x}, T={temp}")));
    }
    if temp <= 0.0 {
        return Err(Error::Domain(format!("chi_ratio needs T > 0, got {temp}")));
    }
    Ok(chi_unchecked(x, temp))
}

#[inline]
pub(crate) fn chi_unchecked(x: f64, temp: f64) -> f64 {
    let s = x / (2.0 * temp);
    if s.abs() < SERIES_CROSSOVER {
        2.0 * temp * (1.0 + s * s / 3.0)
    } else {
        x / s.tanh()
    }
}

/// `k² − μ`, factored for `μ > 0` so it stays smooth in `k` near the Fermi point.
#[inline]
pub fn energy(k: f64, mu: f64) -> f64 {
    if mu > 0.0 {
        let s = mu.sqrt();
        (k.abs() - s) * (k.abs() + s)
    } else {
        k * k - mu
    }
}

/// `K_T(p) = (p² − μ) / tanh((p² − μ)/2T)`.
pub fn k_t(p: f64, params: &PhysParams) -> f64 {
    chi_unchecked(energy(p, params.mu), params.temp)
}

/// `N_T(p, q) = 2 [χ((p+q)² − μ) + χ((p−q)² − μ)]⁻¹`.
pub fn n_t(p: f64, q: f64, params: &PhysParams) -> f64 {
    let a = energy(p + q, params.mu);
    let b = energy(p - q, params.mu);
    2.0 / (chi_unchecked(a, params.temp) + chi_unchecked(b, params.temp))
}

/// `B_T(p, q) = ½ [tanh(a/2T) + tanh(b/2T)] / (p² + q² − μ)` with
/// `a = (p+q)² − μ`, `b = (p−q)² − μ`.
///
/// Uses `tanh x + tanh y = sinh(x+y) / (cosh x cosh y)` whenever the two
/// energies have opposite sign, which removes both the cancellation in the
/// numerator and the `0/0` at `p² + q² = μ`.
pub fn b_t(p: f64, q: f64, params: &PhysParams) -> f64 {
    if q == 0.0 {
        return 1.0 / k_t(p, params);
    }
    let temp = params.temp;
    let a = energy(p + q, params.mu);
    let b = energy(p - q, params.mu);
    let d = p * p + q * q - params.mu;
    let x = a / (2.0 * temp);
    let y = b / (2.0 * temp);
    let s = d / temp;
    if s.abs() >= SERIES_CROSSOVER && x * y >= 0.0 {
        return 0.5 * (x.tanh() + y.tanh()) / d;
    }
    (ln_sinhc(s) - ln_cosh(x) - ln_cosh(y)).exp() / (2.0 * temp)
}

fn ln_cosh(x: f64) -> f64 {
    let ax = x.abs();
    ax + (-2.0 * ax).exp().ln_1p() - std::f64::consts::LN_2
}

/// `ln(sinh(s)/s)`.
fn ln_sinhc(s: f64) -> f64 {
    let a = s.abs();
    if a < SERIES_CROSSOVER {
        (a * a / 6.0).ln_1p()
    } else if a < 20.0 {
        (a.sinh() / a).ln()
    } else {
        a + (-(-2.0 * a).exp()).ln_1p() - std::f64::consts::LN_2 - a.ln()
    }
}

/// Value of the `T → 0` envelope `M`, which is infinite on its pole set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Envelope {
    Finite(f64),
    Pole,
}

impl Envelope {
    pub fn value(self) -> f64 {
        match self {
            Envelope::Finite(v) => v,
            Envelope::Pole => f64::INFINITY,
        }
    }

    pub fn is_pole(self) -> bool {
        matches!(self, Envelope::Pole)
    }
}

/// `M(p, q) = 2 / (|(p−q)² − μ| + |(p+q)² − μ|)`.
///
/// `N_T ≤ M` for every `T`; the pole set is `pq = 0, p² + q² = μ`.
pub fn m_bound(p: f64, q: f64, mu: f64) -> Envelope {
    let den = ((p - q) * (p - q) - mu).abs() + ((p + q) * (p + q) - mu).abs();
    if den == 0.0 {
        Envelope::Pole
    } else {
        Envelope::Finite(2.0 / den)
    }
}

/// `f(x) = x / tanh(x/2)`, i.e. `χ` at `T = 1`.
pub fn f_strong(x: f64) -> f64 {
    chi_unchecked(x, 1.0)
}

/// Derivative `f'(x) = 1/tanh(x/2) − (x/2)/sinh²(x/2)`.
pub fn f_strong_prime(x: f64) -> f64 {
    let u = 0.5 * x;
    if u.abs() < 0.05 {
        // u coth u = 1 + u²/3 − u⁴/45 + 2u⁶/945 − u⁸/4725
        let u2 = u * u;
        return u * (2.0 / 3.0 + u2 * (-4.0 / 45.0 + u2 * (12.0 / 945.0 - u2 * 8.0 / 4725.0)));
    }
    let sh = u.sinh();
    1.0 / u.tanh() - u / (sh * sh)
}

/// `1 − |f'(x)|`, computed without cancellation for large `|x|`.
pub fn f_strong_prime_deficit(x: f64) -> f64 {
    let u = 0.5 * x.abs();
    if u < 1.0 {
        return 1.0 - f_strong_prime(x).abs();
    }
    let w = (-2.0 * u).exp();
    w * (4.0 * u - 2.0 + 2.0 * w) / ((1.0 - w) * (1.0 - w))
}

/// `N_{1,ν}(p, q)`, the strong-coupling kernel at `T = 1` and chemical potential `ν`.
pub fn n_strong(p: f64, q: f64, nu: f64) -> f64 {
    2.0 / (f_strong((p + q) * (p + q) - nu) + f_strong((p - q) * (p - q) - nu))
}

/// `∂N_{1,ν}/∂ν = 2 (f(a) + f(b))⁻² (f'(a) + f'(b))`.
pub fn n_strong_dnu(p: f64, q: f64, nu: f64) -> f64 {
    let a = (p + q) * (p + q) - nu;
    let b = (p - q) * (p - q) - nu;
    let s = f_strong(a) + f_strong(b);
    2.0 * (f_strong_prime(a) + f_strong_prime(b)) / (s * s)
}
