use super::constants::constants;
use crate::error::{Error, Result};
use crate::forward::MeanData;
use crate::numerics::{darboux_l, d_operator, derivative, laplacian_fd, LogKernel, LogKernelMatrix, SampledProfile};
use crate::spaces::{norm, BoundaryGrid, SpaceKind, SpacePoint, SpaceSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which family of formulas to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Outer Laplacian of the back-projected field.
    Direct,
    /// Radial Laplacian of the data, no outer Laplacian (Euclidean only).
    Modified,
}

/// Prefactor of the hyperbolic formulas. `Printed` carries the factor
/// `1/|x|`, `|x|² = |x'|² + x_{n+1}²`, which stems from the Euclidean area
/// element of the hyperboloid; `Riemannian` drops it, matching the invariant
/// measure `dx'/x_{n+1}` under which the means are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HyperbolicPrefactor {
    Printed,
    #[default]
    Riemannian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// `Σ_i w_i F_i(a(ξ_i, x))` with `F_i` interpolated on its t-grid: the
/// normalized boundary integral of `F(ξ, a(ξ, x))`.
///
/// Arguments outside the grid contribute zero when they also lie outside
/// the data range of the space, and raise an error otherwise.
pub fn backproject(boundary: &BoundaryGrid, profiles: &[SampledProfile], x: &SpacePoint) -> Result<f64> {
    if profiles.len() != boundary.len() {
        return Err(Error::DataMismatch(format!(
            "{} profiles for {} centres",
            profiles.len(),
            boundary.len()
        )));
    }
    let space = &boundary.space;
    let (lo, hi) = space.t_range();
    let mut acc = 0.0;
    for ((c, w), p) in boundary.centers.iter().zip(&boundary.weights).zip(profiles) {
        let t = space.data_argument(&c.coords, &x.coords);
        if p.grid.contains(t) {
            acc += w * p.eval(t);
        } else if t > lo && t < hi {
            return Err(Error::OutOfRange {
                what: "back-projection argument",
                value: t,
                lo: p.grid.start,
                hi: p.grid.end,
            });
        }
    }
    Ok(acc)
}

/// Precomputed per-centre profiles of one inversion formula, ready to be
/// evaluated at any number of points.
#[derive(Debug, Clone)]
pub struct Reconstructor {
    space: SpaceSpec,
    boundary: BoundaryGrid,
    method: Method,
    profiles: Vec<SampledProfile>,
    /// Constant in front of the normalized back-projection, including
    /// `|∂B|` and any signs.
    scale: f64,
    fd_step: f64,
    hyperbolic: HyperbolicPrefactor,
}

fn weighted(p: &SampledProfile, f: impl Fn(f64) -> f64) -> SampledProfile {
    p.map(|t, v| v * f(t))
}

impl Reconstructor {
    /// Builds the per-centre profiles for plain means `data`.
    pub fn new(data: &MeanData, method: Method) -> Result<Self> {
        data.check()?;
        if data.alpha.is_some() {
            return Err(Error::WrongMethod(
                "EPD traces must be converted to means before inversion".into(),
            ));
        }
        let space = data.space;
        let n = space.n;
        let c = constants(n, space.radius, None)?;
        let area = space.boundary_area();
        let odd = n % 2 == 1;
        let grid = data.tgrid;
        if method == Method::Modified && space.kind != SpaceKind::Euclidean {
            return Err(Error::WrongMethod("modified formulas exist for R^n only".into()));
        }
        let (lo, hi) = space.t_range();
        let (lo, hi) = (lo.max(grid.start), hi.min(grid.end));
        let kernel = match space.kind {
            SpaceKind::Euclidean => LogKernel::SquareDifference,
            _ => LogKernel::Difference,
        };
        let matrix = (!odd).then(|| LogKernelMatrix::new(grid, kernel, lo, hi));
        let nf = n as f64;
        let build = |i: usize| -> Result<SampledProfile> {
            let mut m = data.profile(i);
            let p = match space.kind {
                SpaceKind::Euclidean => {
                    if method == Method::Modified {
                        m = darboux_l(&m, n)?;
                    }
                    let w = weighted(&m, |t| t.powi(n as i32 - 2));
                    if odd {
                        d_operator(&w, n - 3)?
                    } else {
                        weighted(&d_operator(&w, n - 2)?, |t| t)
                    }
                }
                SpaceKind::Sphere => {
                    derivative(&weighted(&m, |t| (1.0 - t * t).powf(nf / 2.0 - 1.0)), if odd { n - 3 } else { n - 2 })?
                }
                SpaceKind::Hyperbolic => {
                    derivative(&weighted(&m, |t| (t * t - 1.0).powf(nf / 2.0 - 1.0)), if odd { n - 3 } else { n - 2 })?
                }
            };
            Ok(match &matrix {
                Some(mat) => SampledProfile {
                    grid,
                    samples: mat.apply(&p.samples),
                },
                None => p,
            })
        };
        let profiles = (0..data.boundary.len())
            .into_par_iter()
            .map(build)
            .collect::<Result<Vec<_>>>()?;
        let scale = area
            * match (space.kind, odd) {
                (SpaceKind::Euclidean, true) => c.d_n1.unwrap_or(0.0),
                (SpaceKind::Euclidean, false) => c.d_n2.unwrap_or(0.0),
                (_, true) => -c.d_n,
                (_, false) => c.d_n / PI,
            };
        Ok(Self {
            space,
            boundary: data.boundary.clone(),
            method,
            profiles,
            scale,
            fd_step: 1e-2 * space.radius,
            hyperbolic: HyperbolicPrefactor::default(),
        })
    }

    pub fn with_fd_step(mut self, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter(format!("finite-difference step {h}")));
        }
        self.fd_step = h;
        Ok(self)
    }

    pub fn with_hyperbolic_prefactor(mut self, p: HyperbolicPrefactor) -> Self {
        self.hyperbolic = p;
        self
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn profiles(&self) -> &[SampledProfile] {
        &self.profiles
    }

    /// The scaled back-projected field before the outer Laplacian, at chart
    /// coordinates.
    pub fn field(&self, chart: &[f64]) -> Result<f64> {
        let p = self.space.lift(chart)?;
        Ok(self.scale * backproject(&self.boundary, &self.profiles, &p)?)
    }

    /// Prefactor multiplying the Laplacian at a point: 1 in `R^n`,
    /// `x_{n+1}/sin θ` on the sphere and `x_{n+1}/sinh R` on the hyperboloid
    /// (divided by `|x|` for [`HyperbolicPrefactor::Printed`]).
    pub fn prefactor(&self, p: &SpacePoint) -> f64 {
        let n = self.space.n;
        let r = self.space.radius;
        match self.space.kind {
            SpaceKind::Euclidean => 1.0,
            SpaceKind::Sphere => p.coords[n] / r.sin(),
            SpaceKind::Hyperbolic => match self.hyperbolic {
                HyperbolicPrefactor::Printed => p.coords[n] / (norm(&p.coords) * r.sinh()),
                HyperbolicPrefactor::Riemannian => p.coords[n] / r.sinh(),
            },
        }
    }

    /// Reconstructed value at chart coordinates `chart`.
    pub fn eval(&self, chart: &[f64]) -> Result<f64> {
        let p = self.space.lift(chart)?;
        let d = self.space.distance_from_origin(&p.coords);
        if !(d < self.space.radius) {
            return Err(Error::OutOfRange {
                what: "distance of the evaluation point from the origin",
                value: d,
                lo: 0.0,
                hi: self.space.radius,
            });
        }
        match self.method {
            Method::Modified => self.field(chart),
            Method::Direct => Ok(self.prefactor(&p) * laplacian_fd(|y| self.field(y), chart, self.fd_step)?),
        }
    }

    pub fn eval_point(&self, p: &SpacePoint) -> Result<f64> {
        self.space.check(&p.coords)?;
        self.eval(self.space.chart(p))
    }

    /// Reconstruction at many chart points in parallel.
    pub fn reconstruct(&self, charts: &[Vec<f64>]) -> Result<Vec<f64>> {
        charts.par_iter().map(|x| self.eval(x)).collect()
    }
}

fn require(data: &MeanData, kind: SpaceKind, parity: Option<Parity>) -> Result<()> {
    if data.space.kind != kind {
        return Err(Error::WrongMethod(format!(
            "{} data given to the {} formula",
            data.space.kind.name(),
            kind.name()
        )));
    }
    let odd = data.space.n % 2 == 1;
    match parity {
        Some(Parity::Odd) if !odd => Err(Error::WrongMethod(format!("odd-n formula for n = {}", data.space.n))),
        Some(Parity::Even) if odd => Err(Error::WrongMethod(format!("even-n formula for n = {}", data.space.n))),
        _ => Ok(()),
    }
}

/// Odd-dimensional Euclidean inversion at one point.
pub fn invert_euclidean_odd(data: &MeanData, x: &SpacePoint) -> Result<f64> {
    require(data, SpaceKind::Euclidean, Some(Parity::Odd))?;
    Reconstructor::new(data, Method::Direct)?.eval_point(x)
}

/// Even-dimensional Euclidean inversion at one point, including `n = 2`.
pub fn invert_euclidean_even(data: &MeanData, x: &SpacePoint) -> Result<f64> {
    require(data, SpaceKind::Euclidean, Some(Parity::Even))?;
    Reconstructor::new(data, Method::Direct)?.eval_point(x)
}

/// Modified Euclidean inversion (no outer Laplacian) at one point.
pub fn invert_euclidean_modified(data: &MeanData, x: &SpacePoint, parity: Parity) -> Result<f64> {
    require(data, SpaceKind::Euclidean, Some(parity))?;
    Reconstructor::new(data, Method::Modified)?.eval_point(x)
}

pub fn invert_sphere(data: &MeanData, x: &SpacePoint) -> Result<f64> {
    require(data, SpaceKind::Sphere, None)?;
    Reconstructor::new(data, Method::Direct)?.eval_point(x)
}

pub fn invert_hyperbolic(data: &MeanData, x: &SpacePoint) -> Result<f64> {
    require(data, SpaceKind::Hyperbolic, None)?;
    Reconstructor::new(data, Method::Direct)?.eval_point(x)
}
