//! Product integration of a sampled profile against a kernel with isolated
//! integrable singularities. The profile is replaced by its local cubic
//! interpolant, so the integral is a fixed linear functional of the samples
//! and can be stored as a weight vector.

use super::grid::TGrid;
use super::quadrature::GaussRule;
use std::sync::OnceLock;

pub(crate) const LOG_SMALLEST: f64 = 1e-10;

fn rules() -> &'static (GaussRule, GaussRule) {
    static RULES: OnceLock<(GaussRule, GaussRule)> = OnceLock::new();
    RULES.get_or_init(|| (GaussRule::new(10), GaussRule::new(6)))
}

/// Panel breakpoints: the range ends, the grid nodes inside the range and
/// geometric sequences (ratio 2) around each point of `graded_at`.
pub(crate) fn breakpoints(grid: &TGrid, lo: f64, hi: f64, graded_at: &[f64], smallest: f64) -> Vec<f64> {
    let zone = 2.0 * grid.step();
    let mut pts = Vec::with_capacity(grid.len + 80 * graded_at.len() + 2);
    pts.push(lo);
    pts.push(hi);
    for i in 0..grid.len {
        let t = grid.node(i);
        if t > lo && t < hi {
            pts.push(t);
        }
    }
    for &c in graded_at {
        if c > lo && c < hi {
            pts.push(c);
        }
        let mut d = zone;
        while d > smallest {
            for p in [c - d, c + d] {
                if p > lo && p < hi {
                    pts.push(p);
                }
            }
            d *= 0.5;
        }
        for p in [c - d, c + d] {
            if p > lo && p < hi {
                pts.push(p);
            }
        }
    }
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup_by(|b, a| (*b - *a).abs() <= 1e-15 * a.abs().max(b.abs()).max(1e-300));
    pts
}

/// Adds to `out` the weights of `∫_lo^hi K(t) p(t) dt`, `p` the cubic
/// interpolant of the samples. Panels for which `innermost(a, b)` returns
/// `Some(∫_a^b K)` are treated by freezing `p` at the panel midpoint.
pub(crate) fn product_weights<K, I>(
    grid: &TGrid,
    lo: f64,
    hi: f64,
    graded_at: &[f64],
    smallest: f64,
    scale: f64,
    kernel: K,
    innermost: I,
    out: &mut [f64],
) where
    K: Fn(f64) -> f64,
    I: Fn(f64, f64) -> Option<f64>,
{
    if hi <= lo {
        return;
    }
    let (fine, coarse) = rules();
    let zone = 2.0 * grid.step();
    let pts = breakpoints(grid, lo, hi, graded_at, smallest);
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let cell = grid.cell(mid);
        if let Some(k) = innermost(a, b) {
            grid.basis_in_cell(cell, mid).scatter(scale * k, out);
            continue;
        }
        let near = graded_at
            .iter()
            .any(|&c| c > a - 2.0 * zone && c < b + 2.0 * zone);
        let rule = if near { fine } else { coarse };
        for (t, wt) in rule.mapped(a, b) {
            let k = kernel(t);
            if k != 0.0 {
                grid.basis_in_cell(cell, t).scatter(scale * wt * k, out);
            }
        }
    }
}
