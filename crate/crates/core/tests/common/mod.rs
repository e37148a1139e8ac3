//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here calls into the library: integrals use adaptive Simpson,
//! eigenvalues use cyclic Jacobi rotations, kernels are written from their
//! textbook hyperbolic forms.

#![allow(dead_code)]

/// Adaptive Simpson on `[a, b]` to absolute tolerance `tol`.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 60)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Simpson over consecutive breakpoints.
pub fn simpson_pieces<F: Fn(f64) -> f64>(f: &F, pts: &[f64], tol: f64) -> f64 {
    pts.windows(2).map(|w| simpson(f, w[0], w[1], tol / pts.len() as f64)).sum()
}

/// Eigenvalues of a symmetric matrix (row-major `n × n`), ascending.
pub fn jacobi_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i * n + j].powi(2)).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `x / tanh(x / 2T)`, written directly.
pub fn chi(x: f64, t: f64) -> f64 {
    if x == 0.0 {
        2.0 * t
    } else {
        x / (x / (2.0 * t)).tanh()
    }
}

pub fn k_ref(p: f64, mu: f64, t: f64) -> f64 {
    chi(p * p - mu, t)
}

pub fn n_ref(p: f64, q: f64, mu: f64, t: f64) -> f64 {
    let a = (p + q) * (p + q) - mu;
    let b = (p - q) * (p - q) - mu;
    2.0 / (chi(a, t) + chi(b, t))
}

/// `(tanh(a/2T) + tanh(b/2T)) / (a + b)`; only reliable away from `a + b = 0`.
pub fn b_ref(p: f64, q: f64, mu: f64, t: f64) -> f64 {
    let a = (p + q) * (p + q) - mu;
    let b = (p - q) * (p - q) - mu;
    ((a / (2.0 * t)).tanh() + (b / (2.0 * t)).tanh()) / (a + b)
}

/// `(2π)^{-1/2} ∫ e^{-ikr} V(r) dr` for an even one-dimensional potential.
pub fn fourier_1d<F: Fn(f64) -> f64>(v: &F, k: f64, r_max: f64, pts: &[f64]) -> f64 {
    let mut cuts = vec![0.0];
    cuts.extend(pts.iter().copied().filter(|x| *x > 0.0 && *x < r_max));
    cuts.push(r_max);
    2.0 * simpson_pieces(&|r| v(r) * (k * r).cos(), &cuts, 1e-12) / (2.0 * std::f64::consts::PI).sqrt()
}

/// `∫_ℝ tanh((p² − μ)/2T)/(p² − μ) dp`: Simpson near the Fermi point, exact tail.
pub fn rank_one_integral(mu: f64, t: f64) -> f64 {
    let s = mu.sqrt();
    let f = |p: f64| {
        let e = p * p - mu;
        if e.abs() < 1e-14 {
            1.0 / (2.0 * t)
        } else {
            (e / (2.0 * t)).tanh() / e
        }
    };
    let w = (t / s).max(1e-6);
    let pts = [0.0, s - 20.0 * w, s - w, s, s + w, s + 20.0 * w, 4.0 * s, 50.0 * s];
    let mut pts: Vec<f64> = pts.iter().copied().filter(|x| *x >= 0.0).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let body = simpson_pieces(&f, &pts, 1e-13);
    // tail beyond 50√μ where tanh = 1 to machine precision: ∫ dp/(p² − μ)
    let l = 50.0 * s;
    let tail = (1.0 / (2.0 * s)) * ((l + s) / (l - s)).ln();
    2.0 * (body + tail)
}
