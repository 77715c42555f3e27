//! JSON run configuration.

use anyhow::{anyhow, bail, Context, Result};
use geomeans::forward::default_tgrid;
use geomeans::inversion::{chart_grid, HyperbolicPrefactor};
use geomeans::spaces::boundary_grid;
use geomeans::{BoundaryGrid, Bump, Method, Phantom, SpaceKind, SpaceSpec, TGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// One bump of the phantom, centred at chart coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpSpec {
    pub center: Vec<f64>,
    /// Geodesic radius of the support.
    pub radius: f64,
    #[serde(default = "unit")]
    pub amplitude: f64,
}

fn unit() -> f64 {
    1.0
}

/// Where the reconstruction is evaluated. `extent` is a fraction of the
/// chart radius of the ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ReconGrid {
    /// Regular grid in the first two chart coordinates.
    Grid { per_axis: usize, extent: f64 },
    /// Uniformly random chart points in the disc `|x'| ≤ extent`, drawn
    /// from the configured seed.
    Random { count: usize, extent: f64 },
}

impl Default for ReconGrid {
    fn default() -> Self {
        ReconGrid::Grid {
            per_axis: 21,
            extent: 0.8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grids {
    /// Points per angle of the boundary grid; defaults depend on `n`.
    #[serde(default)]
    pub boundary_points: Option<usize>,
    /// Nodes of the t-grid; the space's default grid when absent.
    #[serde(default)]
    pub t_points: Option<usize>,
    #[serde(default = "default_order")]
    pub quadrature_order: usize,
    #[serde(default)]
    pub recon_grid: ReconGrid,
    /// Step of the finite-difference Laplacian; `1e-2 R` when absent.
    #[serde(default)]
    pub fd_step: Option<f64>,
}

fn default_order() -> usize {
    48
}

impl Default for Grids {
    fn default() -> Self {
        Self {
            boundary_points: None,
            t_points: None,
            quadrature_order: default_order(),
            recon_grid: ReconGrid::default(),
            fd_step: None,
        }
    }
}

fn default_method() -> Method {
    Method::Direct
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub space: SpaceSpec,
    pub phantom: Vec<BumpSpec>,
    #[serde(default)]
    pub grids: Grids,
    #[serde(default = "default_method")]
    pub method: Method,
    /// EPD order; plain means when absent.
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub hyperbolic_prefactor: HyperbolicPrefactor,
    #[serde(default)]
    pub seed: u64,
}

impl Default for RunConfig {
    /// Unit disc with one off-centre bump.
    fn default() -> Self {
        Self {
            space: SpaceSpec {
                kind: SpaceKind::Euclidean,
                n: 2,
                radius: 1.0,
            },
            phantom: vec![BumpSpec {
                center: vec![0.2, 0.1],
                radius: 0.4,
                amplitude: 1.0,
            }],
            grids: Grids::default(),
            method: Method::Direct,
            alpha: None,
            hyperbolic_prefactor: HyperbolicPrefactor::default(),
            seed: 0,
        }
    }
}

impl RunConfig {
    /// Parses and validates a JSON document. Schema errors name the
    /// offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: RunConfig = serde_path_to_error::deserialize(de)
            .map_err(|e| anyhow!("invalid config at `{}`: {}", e.path(), e.inner()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_json(&text).with_context(|| format!("config {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.space()?;
        self.phantom()?;
        let g = &self.grids;
        if let Some(h) = g.fd_step {
            if !(h > 0.0) {
                bail!("invalid config at `grids.fd_step`: step {h} must be positive");
            }
        }
        if g.quadrature_order == 0 {
            bail!("invalid config at `grids.quadrature_order`: must be positive");
        }
        if g.boundary_points == Some(0) {
            bail!("invalid config at `grids.boundary_points`: must be positive");
        }
        let (n, extent) = match g.recon_grid {
            ReconGrid::Grid { per_axis, extent } => (per_axis, extent),
            ReconGrid::Random { count, extent } => (count, extent),
        };
        if n == 0 || !(extent > 0.0 && extent < 1.0) {
            bail!("invalid config at `grids.recon_grid`: need a positive count and 0 < extent < 1");
        }
        if let Some(a) = self.alpha {
            if !a.is_finite() {
                bail!("invalid config at `alpha`: {a}");
            }
        }
        Ok(())
    }

    pub fn space(&self) -> Result<SpaceSpec> {
        SpaceSpec::new(self.space.kind, self.space.n, self.space.radius)
            .map_err(|e| anyhow!("invalid config at `space`: {e}"))
    }

    pub fn phantom(&self) -> Result<Phantom> {
        let space = self.space()?;
        let bumps = self
            .phantom
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let center = space
                    .lift(&b.center)
                    .map_err(|e| anyhow!("invalid config at `phantom[{i}].center`: {e}"))?;
                Ok(Bump {
                    center,
                    geodesic_radius: b.radius,
                    amplitude: b.amplitude,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Phantom::new(space, bumps).map_err(|e| anyhow!("invalid config at `phantom`: {e}"))
    }

    pub fn boundary_points(&self) -> usize {
        self.grids.boundary_points.unwrap_or(match self.space.n {
            2 => 128,
            3 => 48,
            _ => 32,
        })
    }

    pub fn boundary(&self) -> Result<BoundaryGrid> {
        Ok(boundary_grid(&self.space()?, self.boundary_points())?)
    }

    pub fn tgrid(&self) -> Result<TGrid> {
        let space = self.space()?;
        let g = default_tgrid(&space);
        let len = self.grids.t_points.unwrap_or(if space.n >= 4 { 400 } else { g.len });
        Ok(TGrid::new(g.start, g.end, len)?)
    }

    pub fn chart_radius(&self) -> f64 {
        let r = self.space.radius;
        match self.space.kind {
            SpaceKind::Euclidean => r,
            SpaceKind::Sphere => r.sin(),
            SpaceKind::Hyperbolic => r.sinh(),
        }
    }

    /// Chart coordinates of the evaluation points.
    pub fn eval_points(&self) -> Result<Vec<Vec<f64>>> {
        let space = self.space()?;
        match self.grids.recon_grid {
            ReconGrid::Grid { per_axis, extent } => Ok(chart_grid(&space, per_axis, extent * self.chart_radius())?),
            ReconGrid::Random { count, extent } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let r = extent * self.chart_radius();
                Ok((0..count)
                    .map(|_| {
                        let (rho, phi) = (r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
                        let mut x = vec![0.0; space.n];
                        x[0] = rho * phi.cos();
                        x[1] = rho * phi.sin();
                        x
                    })
                    .collect())
            }
        }
    }
}
