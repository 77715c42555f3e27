use super::grid::{SampledProfile, TGrid};
use super::panels::{product_weights, LOG_SMALLEST};

/// Logarithmic kernels of the even-dimensional inversion formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogKernel {
    /// `log|t^2 - s^2|`
    SquareDifference,
    /// `log|t - s|`
    Difference,
}

impl LogKernel {
    fn singular_points(self, s: f64) -> Vec<f64> {
        match self {
            LogKernel::SquareDifference if s != 0.0 => vec![s, -s],
            _ => vec![s],
        }
    }
}

fn log_weights(grid: &TGrid, kernel: LogKernel, s: f64, lo: f64, hi: f64, out: &mut [f64]) {
    let sing = kernel.singular_points(s);
    let k = |t: f64| sing.iter().map(|c| (t - c).abs().ln()).sum::<f64>();
    let inner = |a: f64, b: f64| {
        let eps = b - a;
        if eps > 1.5 * LOG_SMALLEST {
            return None;
        }
        let j = sing.iter().position(|&c| c == a || c == b)?;
        let mid = 0.5 * (a + b);
        let others: f64 = sing
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, c)| (mid - c).abs().ln())
            .sum();
        Some(eps * eps.ln() - eps + eps * others)
    };
    product_weights(grid, lo, hi, &sing, LOG_SMALLEST, 1.0, k, inner, out);
}

/// `∫_lo^hi p(t) K(t, s) dt` for the cubic interpolant `p` of `profile`,
/// integrated over the grid range.
pub fn log_kernel_integral(profile: &SampledProfile, s: f64, kernel: LogKernel) -> f64 {
    let g = profile.grid;
    log_kernel_integral_on(profile, s, kernel, g.start, g.end)
}

pub(crate) fn log_kernel_integral_on(
    profile: &SampledProfile,
    s: f64,
    kernel: LogKernel,
    lo: f64,
    hi: f64,
) -> f64 {
    let mut w = vec![0.0; profile.grid.len];
    log_weights(&profile.grid, kernel, s, lo, hi, &mut w);
    w.iter().zip(&profile.samples).map(|(a, b)| a * b).sum()
}

/// Dense matrix `W` with `(W p)_i = ∫_lo^hi p(t) K(t, t_i) dt` for every grid
/// node `t_i`, built once and reused for all boundary centres.
#[derive(Debug, Clone)]
pub struct LogKernelMatrix {
    pub grid: TGrid,
    pub kernel: LogKernel,
    pub lo: f64,
    pub hi: f64,
    rows: Vec<f64>,
}

impl LogKernelMatrix {
    pub fn new(grid: TGrid, kernel: LogKernel, lo: f64, hi: f64) -> Self {
        let n = grid.len;
        let mut rows = vec![0.0; n * n];
        {
            use rayon::prelude::*;
            rows.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
                log_weights(&grid, kernel, grid.node(i), lo, hi, row);
            });
        }
        Self { grid, kernel, lo, hi, rows }
    }

    pub fn apply(&self, samples: &[f64]) -> Vec<f64> {
        let n = self.grid.len;
        self.rows
            .chunks(n)
            .map(|row| row.iter().zip(samples).map(|(a, b)| a * b).sum())
            .collect()
    }
}
