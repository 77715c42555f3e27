use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Minimum number of samples a profile grid must carry.
pub const MIN_GRID_LEN: usize = 64;

/// Uniform grid in the data argument `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TGrid {
    pub start: f64,
    pub end: f64,
    pub len: usize,
}

impl TGrid {
    pub fn new(start: f64, end: f64, len: usize) -> Result<Self> {
        if len < MIN_GRID_LEN {
            return Err(Error::InvalidGrid(format!(
                "{len} samples, at least {MIN_GRID_LEN} required"
            )));
        }
        if !(start.is_finite() && end.is_finite() && end > start) {
            return Err(Error::InvalidGrid(format!("empty range [{start}, {end}]")));
        }
        Ok(Self { start, end, len })
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / (self.len - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.len {
            self.end
        } else {
            self.start + i as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.node(i)).collect()
    }

    /// Cell `[t_i, t_{i+1}]` containing `t`, clamped to the grid.
    pub fn cell(&self, t: f64) -> usize {
        let u = (t - self.start) / self.step();
        if u <= 0.0 {
            0
        } else {
            (u.floor() as usize).min(self.len - 2)
        }
    }

    /// Cubic Lagrange basis on the four nodes surrounding `cell`.
    pub fn basis_in_cell(&self, cell: usize, t: f64) -> CubicBasis {
        let first = cell.saturating_sub(1).min(self.len - 4);
        let x = (t - self.start) / self.step() - first as f64;
        let (x1, x2, x3) = (x - 1.0, x - 2.0, x - 3.0);
        CubicBasis {
            first,
            weights: [
                -x1 * x2 * x3 / 6.0,
                x * x2 * x3 / 2.0,
                -x * x1 * x3 / 2.0,
                x * x1 * x2 / 6.0,
            ],
        }
    }

    pub fn basis(&self, t: f64) -> CubicBasis {
        self.basis_in_cell(self.cell(t), t)
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.end
    }
}

/// Weights of the local cubic interpolant at a point.
#[derive(Debug, Clone, Copy)]
pub struct CubicBasis {
    pub first: usize,
    pub weights: [f64; 4],
}

impl CubicBasis {
    pub fn apply(&self, samples: &[f64]) -> f64 {
        let s = &samples[self.first..self.first + 4];
        self.weights[0] * s[0] + self.weights[1] * s[1] + self.weights[2] * s[2] + self.weights[3] * s[3]
    }

    pub fn scatter(&self, scale: f64, out: &mut [f64]) {
        for (k, w) in self.weights.iter().enumerate() {
            out[self.first + k] += scale * w;
        }
    }
}

/// A function of one variable sampled on a [`TGrid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledProfile {
    pub grid: TGrid,
    pub samples: Vec<f64>,
}

impl SampledProfile {
    pub fn new(grid: TGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len {
            return Err(Error::InvalidGrid(format!(
                "{} samples for a grid of {}",
                samples.len(),
                grid.len
            )));
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn<F: FnMut(f64) -> f64>(grid: TGrid, mut f: F) -> Self {
        let samples = (0..grid.len).map(|i| f(grid.node(i))).collect();
        Self { grid, samples }
    }

    /// Local cubic interpolation; outside the grid the end cubic is
    /// extrapolated.
    pub fn eval(&self, t: f64) -> f64 {
        self.grid.basis(t).apply(&self.samples)
    }

    pub fn map<F: FnMut(f64, f64) -> f64>(&self, mut f: F) -> Self {
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(i, &v)| f(self.grid.node(i), v))
            .collect();
        Self { grid: self.grid, samples }
    }
}
