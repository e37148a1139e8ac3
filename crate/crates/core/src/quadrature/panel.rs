//! Globally adaptive panel quadrature with Fermi-surface breakpoints.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::gauss_legendre::gauss_legendre;
use crate::error::{Error, Result};

/// Breakpoints and accuracy targets for one integral.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PanelScheme {
    pub breakpoints: Vec<f64>,
    pub nodes_per_panel: usize,
    /// Maximum number of bisections applied to any single panel.
    pub max_depth: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for PanelScheme {
    fn default() -> Self {
        Self {
            breakpoints: Vec::new(),
            nodes_per_panel: 16,
            max_depth: 60,
            abs_tol: 1e-10,
            rel_tol: 1e-12,
        }
    }
}

impl PanelScheme {
    pub fn with_breakpoints(mut self, points: Vec<f64>) -> Self {
        self.breakpoints = points;
        self
    }

    pub fn with_tol(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }
}

/// Sorted, deduplicated breakpoints restricted to `[lo, hi]`, endpoints included.
pub fn clip_breakpoints(lo: f64, hi: f64, interior: &[f64]) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    pts.extend(interior.iter().copied().filter(|x| x.is_finite() && *x > lo && *x < hi));
    pts.sort_by(f64::total_cmp);
    let scale = (hi - lo).abs().max(f64::MIN_POSITIVE);
    let mut out: Vec<f64> = Vec::with_capacity(pts.len());
    for p in pts {
        match out.last() {
            Some(&last) if p - last <= 1e-15 * scale => {}
            _ => out.push(p),
        }
    }
    if out.len() > 1 && *out.last().unwrap() != hi {
        let n = out.len();
        out[n - 1] = hi;
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VecIntegral {
    pub values: Vec<f64>,
    pub error: f64,
    pub evaluations: usize,
    /// Sub-intervals, in increasing order, on which the final estimate applies the base rule.
    pub leaves: Vec<(f64, f64)>,
}

struct Segment {
    a: f64,
    b: f64,
    depth: usize,
    fine: Vec<f64>,
    err: f64,
    /// Error level attributable to rounding in the fine estimate.
    floor: f64,
}

fn apply_rule<F: FnMut(f64, &mut [f64])>(
    f: &mut F,
    n: usize,
    a: f64,
    b: f64,
    buf: &mut [f64],
    acc: &mut [f64],
) -> f64 {
    let rule = gauss_legendre(n);
    acc.iter_mut().for_each(|v| *v = 0.0);
    let mut abs_mass = 0.0;
    for (x, w) in rule.mapped(a, b) {
        f(x, buf);
        abs_mass += w.abs() * buf.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (s, v) in acc.iter_mut().zip(buf.iter()) {
            *s += w * v;
        }
    }
    abs_mass
}

fn make_segment<F: FnMut(f64, &mut [f64])>(
    f: &mut F,
    n: usize,
    dim: usize,
    a: f64,
    b: f64,
    depth: usize,
    coarse: Option<Vec<f64>>,
    evals: &mut usize,
) -> Segment {
    let mut buf = vec![0.0; dim];
    let coarse = coarse.unwrap_or_else(|| {
        let mut c = vec![0.0; dim];
        apply_rule(f, n, a, b, &mut buf, &mut c);
        *evals += n;
        c
    });
    let m = 0.5 * (a + b);
    let mut left = vec![0.0; dim];
    let mut right = vec![0.0; dim];
    let mass = apply_rule(f, n, a, m, &mut buf, &mut left) + apply_rule(f, n, m, b, &mut buf, &mut right);
    *evals += 2 * n;
    let fine: Vec<f64> = left.iter().zip(&right).map(|(l, r)| l + r).collect();
    let err = fine
        .iter()
        .zip(&coarse)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    Segment { a, b, depth, fine, err, floor: 64.0 * f64::EPSILON * mass }
}

/// Integrates a vector-valued integrand over `[breakpoints[0], breakpoints.last()]`.
///
/// Each panel carries the estimate `G(left) + G(right)` with error
/// `|G(panel) − G(left) − G(right)|`. The panel with the largest error is
/// bisected until the summed error falls below
/// `max(abs_tol, rel_tol · max_k |value_k|)`, or below the accumulated
/// rounding level. Panels whose error is already at rounding level are not
/// split. Ties go to the leftmost panel.
pub fn integrate_vec<F: FnMut(f64, &mut [f64])>(
    mut f: F,
    dim: usize,
    scheme: &PanelScheme,
) -> Result<VecIntegral> {
    let bp = &scheme.breakpoints;
    if bp.len() < 2 {
        return Err(Error::Domain("integration needs at least two breakpoints".into()));
    }
    if bp.iter().any(|x| !x.is_finite()) || bp.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain(format!("breakpoints must be finite and sorted: {bp:?}")));
    }
    let n = scheme.nodes_per_panel.max(2);
    let mut evals = 0usize;
    let mut segs: Vec<Segment> = bp
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| make_segment(&mut f, n, dim, w[0], w[1], 0, None, &mut evals))
        .collect();
    if segs.is_empty() {
        return Ok(VecIntegral { values: vec![0.0; dim], error: 0.0, evaluations: 0, leaves: vec![] });
    }
    // running sums; `heap` holds the splittable segments keyed by error, leftmost first on ties
    let mut total = vec![0.0; dim];
    let (mut err, mut floor) = (0.0, 0.0);
    let mut heap = BinaryHeap::new();
    for (i, s) in segs.iter().enumerate() {
        add_segment(&mut total, &mut err, &mut floor, s, 1.0);
        if splittable(s, scheme) {
            heap.push(HeapKey { err: s.err, a: s.a, idx: i });
        }
    }
    let mut alive = vec![true; segs.len()];
    loop {
        if !err.is_finite() || total.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite integrand value".into()));
        }
        let scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tol = scheme.abs_tol.max(scheme.rel_tol * scale);
        if err <= tol.max(floor) {
            return Ok(finish(&segs, &alive, dim, evals));
        }
        let Some(HeapKey { idx, .. }) = heap.pop() else {
            return Err(Error::Accuracy { estimate: total[0], bound: err });
        };
        if segs.len() + 2 > MAX_SEGMENTS {
            return Err(Error::Accuracy { estimate: total[0], bound: err });
        }
        let (a, b, depth) = (segs[idx].a, segs[idx].b, segs[idx].depth);
        let m = 0.5 * (a + b);
        if !(m > a && m < b) {
            continue;
        }
        add_segment(&mut total, &mut err, &mut floor, &segs[idx], -1.0);
        alive[idx] = false;
        for (l, r) in [(a, m), (m, b)] {
            let child = make_segment(&mut f, n, dim, l, r, depth + 1, None, &mut evals);
            add_segment(&mut total, &mut err, &mut floor, &child, 1.0);
            if splittable(&child, scheme) {
                heap.push(HeapKey { err: child.err, a: child.a, idx: segs.len() });
            }
            segs.push(child);
            alive.push(true);
        }
    }
}

/// Upper bound on the number of segments created by one call.
const MAX_SEGMENTS: usize = 4_000;

fn splittable(s: &Segment, scheme: &PanelScheme) -> bool {
    s.depth < scheme.max_depth && s.err > s.floor
}

fn add_segment(total: &mut [f64], err: &mut f64, floor: &mut f64, s: &Segment, sign: f64) {
    for (t, v) in total.iter_mut().zip(&s.fine) {
        *t += sign * v;
    }
    *err = (*err + sign * s.err).max(0.0);
    *floor = (*floor + sign * s.floor).max(0.0);
}

struct HeapKey {
    err: f64,
    a: f64,
    idx: usize,
}

impl PartialEq for HeapKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapKey {}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Leaves in increasing order; value and error re-summed in that order.
fn finish(segs: &[Segment], alive: &[bool], dim: usize, evaluations: usize) -> VecIntegral {
    let mut live: Vec<&Segment> = segs.iter().zip(alive).filter(|(_, &k)| k).map(|(s, _)| s).collect();
    live.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut values = vec![0.0; dim];
    let mut error = 0.0;
    let mut leaves = Vec::with_capacity(2 * live.len());
    for s in live {
        for (t, v) in values.iter_mut().zip(&s.fine) {
            *t += v;
        }
        error += s.err;
        let m = 0.5 * (s.a + s.b);
        leaves.push((s.a, m));
        leaves.push((m, s.b));
    }
    VecIntegral { values, error, evaluations, leaves }
}

/// Scalar wrapper around [`integrate_vec`].
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, scheme: &PanelScheme) -> Result<Integral> {
    let r = integrate_vec(|x, out: &mut [f64]| out[0] = f(x), 1, scheme)?;
    Ok(Integral { value: r.values[0], error: r.error, evaluations: r.evaluations })
}

/// Convenience form: integrate `f` over `[a, b]` with extra interior breakpoints.
pub fn integrate_interval<F: FnMut(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    interior: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Integral> {
    let scheme = PanelScheme::default()
        .with_breakpoints(clip_breakpoints(a, b, interior))
        .with_tol(abs_tol, rel_tol);
    integrate(f, &scheme)
}
