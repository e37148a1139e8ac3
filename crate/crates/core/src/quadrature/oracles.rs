//! Closed-form antiderivatives of the `M`-envelope integrals, each paired
//! with its quadrature counterpart.

use serde::{Deserialize, Serialize};

use super::panel::integrate_interval;
use crate::error::{Error, Result};
use crate::kernels::m_bound;

/// One closed-form integral together with its arguments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum ClosedForm {
    /// `∫₀^{√μ−q} (√μ − p)/(μ − p² − q²) dp`, `0 ≤ q ≤ √μ/2`.
    ShellWeightedInner { q: f64, mu: f64 },
    /// `∫_{√μ}^{√(3μ)} (p − √μ)/(p² − μ) dp = ln((√3 + 1)/2)`.
    ShellWeightedOuter { mu: f64 },
    /// `∫₀^{|√μ−q|} p/|μ − p² − q²| dp = ½|ln((√μ + q)/(2q))|`, `q > 0`.
    CentreWeightedInner { q: f64, mu: f64 },
    /// `∫_{|√μ−q|}^{√μ+q} dp/(2q) = min(√μ, q)/q`.
    CentreWeightedMiddle { q: f64, mu: f64 },
    /// `∫_{√μ+q}^{√(3μ)} p/(p² + q² − μ) dp`, `√μ + q ≤ √(3μ)`.
    CentreWeightedOuter { q: f64, mu: f64 },
    /// `∫₀^{|q−√μ|} M(p, q) dp`: artanh, zero and arctan branches.
    EnvelopeInner { q: f64, mu: f64 },
    /// `∫_{|q−√μ|+T/√μ}^{√μ} dp/(2pq)`.
    EnvelopeMiddle { q: f64, temp: f64, mu: f64 },
    /// `∫₀^{√μ−q−T/√μ} dp/(μ − p² − q²)`.
    EnvelopeBelowShell { q: f64, temp: f64, mu: f64 },
    /// `∫_{√μ−q}^{√μ+q} dp/(2pq)` for `0 < q < √μ`.
    EnvelopeAcrossShell { q: f64, mu: f64 },
}

impl ClosedForm {
    /// Exact value.
    pub fn evaluate(&self) -> Result<f64> {
        match *self {
            Self::ShellWeightedInner { q, mu } => {
                let (s, q) = (root(mu)?, q.abs());
                if q > 0.5 * s {
                    return Err(branch("q ≤ √μ/2"));
                }
                if q == 0.0 {
                    return Ok(std::f64::consts::LN_2);
                }
                let r = (mu - q * q).sqrt();
                Ok(0.5 * s * (s + r).ln() / r + (0.5 - 0.5 * s / r) * q.ln() - 0.5 * (0.5 * (s + q)).ln())
            }
            Self::ShellWeightedOuter { mu } => {
                root(mu)?;
                Ok((0.5 * (3f64.sqrt() + 1.0)).ln())
            }
            Self::CentreWeightedInner { q, mu } => {
                let (s, q) = (root(mu)?, q.abs());
                if q <= 0.0 {
                    return Err(branch("q > 0"));
                }
                Ok(0.5 * ((s + q) / (2.0 * q)).ln().abs())
            }
            Self::CentreWeightedMiddle { q, mu } => {
                let (s, q) = (root(mu)?, q.abs());
                if q <= 0.0 {
                    return Err(branch("q > 0"));
                }
                Ok(s.min(q) / q)
            }
            Self::CentreWeightedOuter { q, mu } => {
                let (s, q) = (root(mu)?, q.abs());
                if q <= 0.0 || s + q > (3.0 * mu).sqrt() {
                    return Err(branch("0 < q ≤ (√3 − 1)√μ"));
                }
                Ok(0.5 * ((2.0 * mu + q * q) / (2.0 * q * (s + q))).ln())
            }
            Self::EnvelopeInner { q, mu } => {
                let (s, q) = (root(mu)?, q.abs());
                if q < s {
                    let r = (mu - q * q).sqrt();
                    Ok(((s - q) / (s + q)).sqrt().atanh() / r)
                } else if q == s {
                    Ok(0.0)
                } else {
                    let r = (q * q - mu).sqrt();
                    Ok(((q - s) / (q + s)).sqrt().atan() / r)
                }
            }
            Self::EnvelopeMiddle { q, temp, mu } => {
                let (s, q) = (root(mu)?, q.abs());
                let lo = (q - s).abs() + temp / s;
                if q <= 0.0 || temp <= 0.0 || lo > s {
                    return Err(branch("q > 0, T > 0 and |q − √μ| + T/√μ ≤ √μ"));
                }
                Ok((s / lo).ln() / (2.0 * q))
            }
            Self::EnvelopeBelowShell { q, temp, mu } => {
                let (s, q) = (root(mu)?, q.abs());
                let l = s - q - temp / s;
                let r = (mu - q * q).max(0.0).sqrt();
                if temp <= 0.0 || l <= 0.0 || l >= r {
                    return Err(branch("0 < √μ − q − T/√μ < √(μ − q²)"));
                }
                Ok((1.0 + 2.0 * l / (r - l)).ln() / (2.0 * r))
            }
            Self::EnvelopeAcrossShell { q, mu } => {
                let (s, q) = (root(mu)?, q.abs());
                if q <= 0.0 || q >= s {
                    return Err(branch("0 < q < √μ"));
                }
                Ok((1.0 + 2.0 * q / (s - q)).ln() / (2.0 * q))
            }
        }
    }

    /// The same integral by adaptive panel quadrature of its integrand.
    pub fn quadrature(&self, tol: f64) -> Result<f64> {
        self.evaluate()?;
        let int = |f: &dyn Fn(f64) -> f64, a: f64, b: f64| -> Result<f64> {
            integrate_interval(f, a, b, &[], tol, tol).map(|r| r.value)
        };
        match *self {
            Self::ShellWeightedInner { q, mu } => {
                let s = mu.sqrt();
                int(&|p| (s - p) / (mu - p * p - q * q), 0.0, s - q.abs())
            }
            Self::ShellWeightedOuter { mu } => {
                let s = mu.sqrt();
                int(&|p| (p - s) / (p * p - mu), s, (3.0 * mu).sqrt())
            }
            Self::CentreWeightedInner { q, mu } => {
                let s = mu.sqrt();
                int(&|p| p / (mu - p * p - q * q).abs(), 0.0, (s - q.abs()).abs())
            }
            Self::CentreWeightedMiddle { q, mu } => {
                let s = mu.sqrt();
                let q = q.abs();
                int(&|p| m_bound(p, q, mu).value() * p, (s - q).abs(), s + q)
            }
            Self::CentreWeightedOuter { q, mu } => {
                let s = mu.sqrt();
                int(&|p| p / (p * p + q * q - mu), s + q.abs(), (3.0 * mu).sqrt())
            }
            Self::EnvelopeInner { q, mu } => {
                let s = mu.sqrt();
                let q = q.abs();
                if q == s {
                    return Ok(0.0);
                }
                int(&|p| m_bound(p, q, mu).value(), 0.0, (q - s).abs())
            }
            Self::EnvelopeMiddle { q, temp, mu } => {
                let s = mu.sqrt();
                let q = q.abs();
                int(&|p| 1.0 / (2.0 * p * q), (q - s).abs() + temp / s, s)
            }
            Self::EnvelopeBelowShell { q, temp, mu } => {
                let s = mu.sqrt();
                let q = q.abs();
                int(&|p| 1.0 / (mu - p * p - q * q), 0.0, s - q - temp / s)
            }
            Self::EnvelopeAcrossShell { q, mu } => {
                let s = mu.sqrt();
                let q = q.abs();
                int(&|p| m_bound(p, q, mu).value(), s - q, s + q)
            }
        }
    }
}

fn root(mu: f64) -> Result<f64> {
    if mu > 0.0 && mu.is_finite() {
        Ok(mu.sqrt())
    } else {
        Err(Error::Domain(format!("closed forms need mu > 0, got {mu}")))
    }
}

fn branch(cond: &str) -> Error {
    Error::Precondition(format!("closed form evaluated outside its branch: requires {cond}"))
}

/// Twenty parameter points covering every branch of every closed form.
pub fn branch_covering_points() -> Vec<ClosedForm> {
    use ClosedForm::*;
    vec![
        ShellWeightedInner { q: 0.0, mu: 1.0 },
        ShellWeightedInner { q: 0.1, mu: 1.0 },
        ShellWeightedInner { q: 0.5, mu: 1.0 },
        ShellWeightedInner { q: 0.3, mu: 2.0 },
        ShellWeightedOuter { mu: 1.0 },
        ShellWeightedOuter { mu: 3.5 },
        CentreWeightedInner { q: 0.6, mu: 1.0 },
        CentreWeightedInner { q: 1.4, mu: 1.0 },
        CentreWeightedMiddle { q: 0.7, mu: 1.0 },
        CentreWeightedMiddle { q: 1.3, mu: 1.0 },
        CentreWeightedOuter { q: 0.5, mu: 1.0 },
        CentreWeightedOuter { q: 0.7, mu: 1.0 },
        EnvelopeInner { q: 0.6, mu: 1.0 },
        EnvelopeInner { q: 1.0, mu: 1.0 },
        EnvelopeInner { q: 1.4, mu: 1.0 },
        EnvelopeInner { q: 0.8, mu: 2.0 },
        EnvelopeMiddle { q: 0.8, temp: 1e-3, mu: 1.0 },
        EnvelopeMiddle { q: 1.2, temp: 1e-2, mu: 1.0 },
        EnvelopeBelowShell { q: 0.2, temp: 1e-4, mu: 1.0 },
        EnvelopeAcrossShell { q: 0.3, mu: 1.0 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_zero_at_sphere() {
        assert_eq!(ClosedForm::EnvelopeInner { q: 1.0, mu: 1.0 }.evaluate().unwrap(), 0.0);
    }

    #[test]
    fn out_of_branch_is_rejected() {
        assert!(ClosedForm::ShellWeightedInner { q: 0.8, mu: 1.0 }.evaluate().is_err());
        assert!(ClosedForm::CentreWeightedOuter { q: 1.0, mu: 1.0 }.evaluate().is_err());
        assert!(ClosedForm::EnvelopeAcrossShell { q: 1.2, mu: 1.0 }.evaluate().is_err());
    }

    #[test]
    fn q_zero_limit_is_continuous() {
        let a = ClosedForm::ShellWeightedInner { q: 0.0, mu: 1.0 }.evaluate().unwrap();
        let b = ClosedForm::ShellWeightedInner { q: 1e-7, mu: 1.0 }.evaluate().unwrap();
        assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn middle_piece_bounded_by_one() {
        for q in [0.5, 0.8, 1.0, 1.2, 1.5] {
            assert!(ClosedForm::CentreWeightedMiddle { q, mu: 1.0 }.evaluate().unwrap() <= 1.0);
        }
    }
}
