//! Gauss rules for the measure `A(p) dp` on each panel.
//!
//! The kernel `A` is sharply peaked at low temperature while the interaction
//! kernel stays smooth, so nodes are built for the weight `A` itself: moments
//! are resolved by adaptive quadrature, the resulting discrete measure is
//! reduced by Lanczos with full reorthogonalisation, and the Jacobi matrix is
//! diagonalised (Golub–Welsch).

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre::{gauss_legendre, legendre_all};
use crate::quadrature::panel::{clip_breakpoints, integrate_vec, PanelScheme, VecIntegral};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct WeightedRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl WeightedRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    fn append(&mut self, other: WeightedRule) {
        self.nodes.extend(other.nodes);
        self.weights.extend(other.weights);
    }
}

/// `m`-point Gauss rule for `∫_a^b g(p) w(p) dp`, `w ≥ 0`.
///
/// `hints` are points where `w` changes scale; those inside `(a, b)` split the
/// moment integration but not the rule.
pub fn panel_rule<W: Fn(f64) -> f64>(w: &W, a: f64, b: f64, hints: &[f64], m: usize, rel_tol: f64) -> Result<WeightedRule> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let n_mom = 2 * m;
    let interior: Vec<f64> = hints.iter().filter(|p| **p > a && **p < b).map(|p| (p - mid) / half).collect();
    // moments are taken in the local coordinate t ∈ [-1, 1], p = mid + half·t,
    // so the Legendre arguments carry no cancellation on narrow panels
    let scheme = PanelScheme {
        breakpoints: clip_breakpoints(-1.0, 1.0, &interior),
        nodes_per_panel: 16,
        max_depth: 60,
        abs_tol: 0.0,
        rel_tol,
    };
    // past the rounding floor of the kernel (narrow panels at very low
    // temperature), accept progressively looser moment targets
    let mut res = moments(w, mid, half, n_mom, &scheme);
    for loosen in [1e2, 1e4, 1e6] {
        match res {
            Err(Error::Accuracy { .. }) => {
                res = moments(w, mid, half, n_mom, &PanelScheme { rel_tol: loosen * rel_tol, ..scheme.clone() });
            }
            _ => break,
        }
    }
    let res = res?;
    let nu0 = res.values[0];
    if !(nu0 > 0.0) {
        return Ok(WeightedRule::default());
    }
    // discrete measure on [-1, 1]
    let rule = gauss_legendre(scheme.nodes_per_panel);
    let mut xs = Vec::with_capacity(res.leaves.len() * rule.order());
    let mut ws = Vec::with_capacity(xs.capacity());
    for &(l, r) in &res.leaves {
        for (t, wt) in rule.mapped(l, r) {
            let v = wt * half * w(mid + half * t);
            if v > 0.0 {
                xs.push(t);
                ws.push(v);
            }
        }
    }
    let (alpha, beta) = lanczos(&xs, &ws, m);
    let k = alpha.len();
    if k == 0 {
        return Ok(WeightedRule::default());
    }
    let mut jac = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        jac[(i, i)] = alpha[i];
        if i + 1 < k {
            jac[(i, i + 1)] = beta[i];
            jac[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(jac);
    let mut pairs: Vec<(f64, f64)> = (0..k)
        .map(|j| {
            let v0 = eig.eigenvectors[(0, j)];
            (mid + half * eig.eigenvalues[j].clamp(-1.0, 1.0), nu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(WeightedRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

fn moments<W: Fn(f64) -> f64>(w: &W, mid: f64, half: f64, n_mom: usize, scheme: &PanelScheme) -> Result<VecIntegral> {
    let mut leg = vec![0.0; n_mom];
    integrate_vec(
        |t, out: &mut [f64]| {
            let wp = half * w(mid + half * t);
            legendre_all(t, &mut leg);
            for (o, l) in out.iter_mut().zip(&leg) {
                *o = wp * l;
            }
        },
        n_mom,
        scheme,
    )
}

/// Recurrence coefficients of the orthonormal polynomials of a discrete measure.
fn lanczos(xs: &[f64], ws: &[f64], m: usize) -> (Vec<f64>, Vec<f64>) {
    let n = xs.len();
    let norm0: f64 = ws.iter().sum::<f64>().sqrt();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    basis.push(ws.iter().map(|w| w.sqrt() / norm0).collect());
    let mut alpha = Vec::with_capacity(m);
    let mut beta: Vec<f64> = Vec::with_capacity(m);
    for j in 0..m.min(n) {
        let qj = &basis[j];
        let mut v: Vec<f64> = qj.iter().zip(xs).map(|(q, x)| q * x).collect();
        let a: f64 = v.iter().zip(qj).map(|(x, y)| x * y).sum();
        alpha.push(a);
        if j + 1 == m {
            break;
        }
        for _ in 0..2 {
            for qk in &basis {
                let c: f64 = v.iter().zip(qk).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(qk).for_each(|(x, y)| *x -= c * y);
            }
        }
        let b = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(b > 1e-14) {
            break;
        }
        beta.push(b);
        basis.push(v.into_iter().map(|x| x / b).collect());
    }
    (alpha, beta)
}

/// Concatenated rules over consecutive panels given by `breakpoints`.
pub fn composite_rule<W: Fn(f64) -> f64>(
    w: &W,
    breakpoints: &[f64],
    hints: &[f64],
    m: usize,
    rel_tol: f64,
) -> Result<WeightedRule> {
    let mut out = WeightedRule::default();
    for pair in breakpoints.windows(2) {
        if pair[1] > pair[0] {
            out.append(panel_rule(w, pair[0], pair[1], hints, m, rel_tol)?);
        }
    }
    Ok(out)
}

/// Rule for `∫_{P}^{∞} g(p) w(p) dp` through `p = P/t`, `t ∈ (0, 1]`.
pub fn tail_rule<W: Fn(f64) -> f64>(w: &W, p_cut: f64, m: usize, rel_tol: f64) -> Result<WeightedRule> {
    let wt = |t: f64| {
        if t <= 0.0 {
            0.0
        } else {
            w(p_cut / t) * p_cut / (t * t)
        }
    };
    let r = panel_rule(&wt, 0.0, 1.0, &[], m, rel_tol)?;
    let mut pairs: Vec<(f64, f64)> = r.nodes.iter().zip(&r.weights).map(|(t, w)| (p_cut / t, *w)).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(WeightedRule { nodes: pairs.iter().map(|p| p.0).collect(), weights: pairs.iter().map(|p| p.1).collect() })
}
