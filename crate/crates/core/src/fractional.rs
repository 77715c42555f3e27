//! Erdelyi-Kober and right-sided Riemann-Liouville fractional integrals of
//! arbitrary real order on sampled profiles.
//!
//! Positive orders are product-integration matrices built once per grid:
//! the profile is replaced by its local cubic interpolant and integrated
//! exactly against the singular kernel on panels graded towards the
//! singular endpoint. Non-positive orders integrate up to a positive order
//! and then differentiate an integer number of times.

use crate::error::{Error, Result};
use crate::numerics::panels::product_weights;
use crate::numerics::{d_operator, derivative, SampledProfile, TGrid};
use crate::special::{gamma, rgamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Index `η` and order `α` of an Erdelyi-Kober operator `I_η^α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FractionalSpec {
    pub eta: f64,
    pub alpha: f64,
}

impl FractionalSpec {
    pub fn new(eta: f64, alpha: f64) -> Self {
        Self { eta, alpha }
    }
}

const POWER_SMALLEST: f64 = 1e-12;

fn matvec(rows: &[f64], n: usize, v: &[f64]) -> Vec<f64> {
    rows.chunks(n)
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Matrix of `t ↦ 2 t^{-2(α+η)}/Γ(α) ∫_0^t (t² - r²)^{α-1} r^{2η+1} φ(r) dr`
/// evaluated at the grid nodes, `α > 0`.
fn ek_matrix(grid: &TGrid, eta: f64, alpha: f64) -> Vec<f64> {
    let n = grid.len;
    let mut rows = vec![0.0; n * n];
    let g = gamma(alpha);
    rows.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
        let t = grid.node(j);
        let scale = 2.0 * t.powf(-2.0 * (alpha + eta)) / g;
        let smallest = POWER_SMALLEST * t;
        let kernel = |r: f64| ((t - r) * (t + r)).powf(alpha - 1.0) * r.powf(2.0 * eta + 1.0);
        let inner = |a: f64, b: f64| {
            let eps = b - a;
            (b == t && eps <= 1.5 * smallest)
                .then(|| (2.0 * t).powf(alpha - 1.0) * t.powf(2.0 * eta + 1.0) * eps.powf(alpha) / alpha)
        };
        product_weights(grid, 0.0, t, &[t], smallest, scale, kernel, inner, row);
    });
    rows
}

/// Matrix of `t ↦ Γ(α)^{-1} ∫_t^1 (τ - t)^{α-1} u(τ) dτ` at the grid nodes.
fn rl_matrix(grid: &TGrid, alpha: f64, upper: f64) -> Vec<f64> {
    let n = grid.len;
    let mut rows = vec![0.0; n * n];
    let scale = rgamma(alpha);
    rows.par_chunks_mut(n).enumerate().for_each(|(j, row)| {
        let t = grid.node(j);
        let smallest = POWER_SMALLEST * t.abs().max(grid.step());
        let kernel = |tau: f64| (tau - t).powf(alpha - 1.0);
        let inner = |a: f64, b: f64| {
            let eps = b - a;
            (a == t && eps <= 1.5 * smallest).then(|| eps.powf(alpha) / alpha)
        };
        product_weights(grid, t, upper, &[t], smallest, scale, kernel, inner, row);
    });
    rows
}

/// Erdelyi-Kober operator `I_η^α` of any real order on a fixed grid.
///
/// For `α ≤ 0` with `m = ⌈-α⌉` it is realized as
/// `I_η^{m+α} ∘ I_{η+m+α}^{-m}` with
/// `I_{η'}^{-m} φ = t^{-2(η'-m)} D^m t^{2η'} φ`.
#[derive(Debug, Clone)]
pub struct ErdelyiKober {
    pub grid: TGrid,
    pub spec: FractionalSpec,
    derivatives: usize,
    eta_prime: f64,
    matrix: Option<Vec<f64>>,
}

impl ErdelyiKober {
    pub fn new(grid: TGrid, spec: FractionalSpec) -> Result<Self> {
        if grid.start <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "Erdelyi-Kober operators need a positive grid, starts at {}",
                grid.start
            )));
        }
        let alpha = spec.alpha;
        let (derivatives, positive) = if alpha > 0.0 {
            if spec.eta < -0.5 {
                return Err(Error::InvalidParameter(format!("η = {} < -1/2", spec.eta)));
            }
            (0, alpha)
        } else {
            let m = (-alpha).ceil() as usize;
            (m, m as f64 + alpha)
        };
        if grid.len < derivatives + 8 {
            return Err(Error::InvalidGrid(format!(
                "{} samples too few for {derivatives} derivatives",
                grid.len
            )));
        }
        let eta_prime = spec.eta + positive;
        let matrix = (positive > 0.0).then(|| ek_matrix(&grid, spec.eta, positive));
        Ok(Self {
            grid,
            spec,
            derivatives,
            eta_prime,
            matrix,
        })
    }

    pub fn apply(&self, samples: &[f64]) -> Result<Vec<f64>> {
        if samples.len() != self.grid.len {
            return Err(Error::InvalidGrid(format!(
                "{} samples for a grid of {}",
                samples.len(),
                self.grid.len
            )));
        }
        let mut v = samples.to_vec();
        if self.derivatives > 0 {
            let m = self.derivatives;
            let ep = self.eta_prime;
            let p: Vec<f64> = v
                .iter()
                .enumerate()
                .map(|(i, x)| x * self.grid.node(i).powf(2.0 * ep))
                .collect();
            let d = d_operator(&SampledProfile::new(self.grid, p)?, m)?;
            v = d
                .samples
                .iter()
                .enumerate()
                .map(|(i, x)| x * self.grid.node(i).powf(-2.0 * (ep - m as f64)))
                .collect();
        }
        if let Some(mat) = &self.matrix {
            v = matvec(mat, self.grid.len, &v);
        }
        Ok(v)
    }

    pub fn apply_profile(&self, profile: &SampledProfile) -> Result<SampledProfile> {
        if profile.grid != self.grid {
            return Err(Error::InvalidGrid("profile grid differs from operator grid".into()));
        }
        SampledProfile::new(self.grid, self.apply(&profile.samples)?)
    }
}

/// `I_η^α φ` for `α > 0`.
pub fn erdelyi_kober(profile: &SampledProfile, spec: FractionalSpec) -> Result<SampledProfile> {
    if spec.alpha <= 0.0 {
        return Err(Error::WrongMethod(format!(
            "order {} ≤ 0 needs the analytic continuation",
            spec.alpha
        )));
    }
    ErdelyiKober::new(profile.grid, spec)?.apply_profile(profile)
}

/// `I_η^α φ` for `α ≤ 0`, by analytic continuation.
pub fn erdelyi_kober_ac(profile: &SampledProfile, spec: FractionalSpec) -> Result<SampledProfile> {
    if spec.alpha > 0.0 {
        return Err(Error::WrongMethod(format!(
            "order {} > 0 is a plain fractional integral",
            spec.alpha
        )));
    }
    ErdelyiKober::new(profile.grid, spec)?.apply_profile(profile)
}

/// Right-sided Riemann-Liouville operator `I₋^α` with upper limit 1.
///
/// For `α ≤ 0` with `m = ⌈-α⌉` it is `(-d/dt)^m I₋^{m+α}`.
#[derive(Debug, Clone)]
pub struct RiemannLiouville {
    pub grid: TGrid,
    pub alpha: f64,
    derivatives: usize,
    matrix: Option<Vec<f64>>,
}

impl RiemannLiouville {
    pub fn new(grid: TGrid, alpha: f64) -> Result<Self> {
        if grid.end >= 1.0 || grid.start <= -1.0 {
            return Err(Error::InvalidGrid(format!(
                "grid [{}, {}] must lie inside (-1, 1)",
                grid.start, grid.end
            )));
        }
        let (derivatives, positive) = if alpha > 0.0 {
            (0, alpha)
        } else {
            let m = (-alpha).ceil() as usize;
            (m, m as f64 + alpha)
        };
        if grid.len < derivatives + 8 {
            return Err(Error::InvalidGrid(format!(
                "{} samples too few for {derivatives} derivatives",
                grid.len
            )));
        }
        let matrix = (positive > 0.0).then(|| rl_matrix(&grid, positive, 1.0));
        Ok(Self {
            grid,
            alpha,
            derivatives,
            matrix,
        })
    }

    pub fn apply(&self, samples: &[f64]) -> Result<Vec<f64>> {
        if samples.len() != self.grid.len {
            return Err(Error::InvalidGrid(format!(
                "{} samples for a grid of {}",
                samples.len(),
                self.grid.len
            )));
        }
        let mut v = samples.to_vec();
        if let Some(mat) = &self.matrix {
            v = matvec(mat, self.grid.len, &v);
        }
        if self.derivatives > 0 {
            let d = derivative(&SampledProfile::new(self.grid, v)?, self.derivatives)?;
            let sign = if self.derivatives % 2 == 0 { 1.0 } else { -1.0 };
            v = d.samples.into_iter().map(|x| sign * x).collect();
        }
        Ok(v)
    }
}

/// `I₋^α u` for any real `α`.
pub fn riemann_liouville_right(profile: &SampledProfile, alpha: f64) -> Result<SampledProfile> {
    let op = RiemannLiouville::new(profile.grid, alpha)?;
    SampledProfile::new(profile.grid, op.apply(&profile.samples)?)
}
