use super::reconstructor::{Method, Reconstructor};
use crate::error::{Error, Result};
use crate::phantoms::ScalarField;
use crate::spaces::SpaceSpec;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Reconstruction at a set of chart points compared with the true field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub space: SpaceSpec,
    pub method: Method,
    pub points: Vec<Vec<f64>>,
    pub reconstructed: Vec<f64>,
    pub truth: Vec<f64>,
    /// `‖rec - truth‖₂ / ‖truth‖₂` over the points.
    pub rel_l2: f64,
    pub sup_error: f64,
    /// Least-squares scalar `c` minimizing `‖c·truth - rec‖₂`.
    pub calibration: f64,
    pub elapsed_s: f64,
}

impl ReconstructionReport {
    pub fn from_values(
        space: SpaceSpec,
        method: Method,
        points: Vec<Vec<f64>>,
        reconstructed: Vec<f64>,
        truth: Vec<f64>,
        elapsed_s: f64,
    ) -> Result<Self> {
        if points.len() != reconstructed.len() || points.len() != truth.len() {
            return Err(Error::DataMismatch(format!(
                "{} points, {} reconstructed values, {} true values",
                points.len(),
                reconstructed.len(),
                truth.len()
            )));
        }
        let tt: f64 = truth.iter().map(|t| t * t).sum();
        let rt: f64 = reconstructed.iter().zip(&truth).map(|(r, t)| r * t).sum();
        let ee: f64 = reconstructed.iter().zip(&truth).map(|(r, t)| (r - t).powi(2)).sum();
        let sup_error = reconstructed
            .iter()
            .zip(&truth)
            .map(|(r, t)| (r - t).abs())
            .fold(0.0, |a: f64, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) });
        let (rel_l2, calibration) = if tt > 0.0 {
            ((ee / tt).sqrt(), rt / tt)
        } else {
            (f64::NAN, f64::NAN)
        };
        Ok(Self {
            space,
            method,
            points,
            reconstructed,
            truth,
            rel_l2,
            sup_error,
            calibration,
            elapsed_s,
        })
    }

    /// Runs `rec` at `points` (chart coordinates) and compares with `truth`.
    pub fn compute<F: ScalarField + ?Sized>(rec: &Reconstructor, truth: &F, points: Vec<Vec<f64>>) -> Result<Self> {
        let start = Instant::now();
        let values = rec.reconstruct(&points)?;
        let elapsed = start.elapsed().as_secs_f64();
        let space = *rec.space();
        let exact = points
            .iter()
            .map(|x| Ok(truth.value(&space.lift(x)?.coords)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(space, rec.method(), points, values, exact, elapsed)
    }
}

/// Uniform grid of `per_axis²` chart points on the square `[-extent,
/// extent]²` in the first two chart coordinates (the remaining ones zero),
/// keeping the points with `|x'| ≤ extent`.
pub fn chart_grid(space: &SpaceSpec, per_axis: usize, extent: f64) -> Result<Vec<Vec<f64>>> {
    if per_axis < 2 || !(extent > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "grid of {per_axis} points per axis over extent {extent}"
        )));
    }
    let h = 2.0 * extent / (per_axis - 1) as f64;
    let mut out = Vec::new();
    for i in 0..per_axis {
        for j in 0..per_axis {
            let mut x = vec![0.0; space.n];
            x[0] = -extent + i as f64 * h;
            x[1] = -extent + j as f64 * h;
            if x[0] * x[0] + x[1] * x[1] <= extent * extent * (1.0 + 1e-12) {
                out.push(x);
            }
        }
    }
    Ok(out)
}
