//! Forward data: spherical means over spheres centred on the boundary, and
//! the Euler-Poisson-Darboux traces derived from them.

use crate::error::{Error, Result};
use crate::fractional::{ErdelyiKober, FractionalSpec, RiemannLiouville};
use crate::numerics::{GaussRule, SampledProfile, TGrid};
use crate::phantoms::{bump_profile, Bump, Phantom, ScalarField};
use crate::spaces::{BoundaryGrid, SectionFrame, SpaceKind, SpaceSpec, SphereRule};
use crate::special::{gamma, unit_sphere_area};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Sampled means (or EPD traces when `alpha` is set) on a boundary grid
/// times a t-grid. `values[i][j]` belongs to centre `i` and node `t_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanData {
    pub space: SpaceSpec,
    pub boundary: BoundaryGrid,
    pub tgrid: TGrid,
    pub values: Vec<Vec<f64>>,
    pub alpha: Option<f64>,
}

impl MeanData {
    pub fn profile(&self, center: usize) -> SampledProfile {
        SampledProfile {
            grid: self.tgrid,
            samples: self.values[center].clone(),
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.values.len() != self.boundary.len() {
            return Err(Error::DataMismatch(format!(
                "{} rows for {} centres",
                self.values.len(),
                self.boundary.len()
            )));
        }
        if let Some(row) = self.values.iter().find(|r| r.len() != self.tgrid.len) {
            return Err(Error::DataMismatch(format!(
                "row of {} values for a grid of {}",
                row.len(),
                self.tgrid.len
            )));
        }
        if self.values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::DataMismatch("non-finite mean value".into()));
        }
        Ok(())
    }
}

/// Default t-grid of a space: 800 nodes over `(1e-3, 2R - 1e-3)` in `R^n`,
/// 600 over `(-1 + 1e-3, 1 - 1e-3)` on the sphere and 600 over
/// `(1 + 1e-3, cosh 2R)` on the hyperboloid.
pub fn default_tgrid(space: &SpaceSpec) -> TGrid {
    let (start, end, len) = match space.kind {
        SpaceKind::Euclidean => (1e-3, 2.0 * space.radius - 1e-3, 800),
        SpaceKind::Sphere => (-1.0 + 1e-3, 1.0 - 1e-3, 600),
        SpaceKind::Hyperbolic => (1.0 + 1e-3, (2.0 * space.radius).cosh(), 600),
    };
    TGrid { start, end, len }
}

/// How a mean over one sphere is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionRule {
    /// Product quadrature on the whole sphere of integration.
    Sections,
    /// For bump phantoms: each bump is radial, so its mean reduces to a
    /// one-dimensional integral over the angle seen from the centre.
    Reduced,
}

/// `∫_0^π sin^{n-2} γ dγ`
fn polar_normalizer(n: usize) -> f64 {
    PI.sqrt() * gamma((n as f64 - 1.0) / 2.0) / gamma(n as f64 / 2.0)
}

/// Half-chord function `Q` and coupling `K` of the law of cosines written as
/// `Q(D) = Q(d - r) + K(d, r) sin²(γ/2)`.
fn half_chord(kind: SpaceKind, x: f64) -> f64 {
    match kind {
        SpaceKind::Euclidean => 0.25 * x * x,
        SpaceKind::Sphere => (0.5 * x).sin().powi(2),
        SpaceKind::Hyperbolic => (0.5 * x).sinh().powi(2),
    }
}

fn coupling(kind: SpaceKind, d: f64, r: f64) -> f64 {
    match kind {
        SpaceKind::Euclidean => d * r,
        SpaceKind::Sphere => d.sin() * r.sin(),
        SpaceKind::Hyperbolic => d.sinh() * r.sinh(),
    }
}

fn from_half_chord(kind: SpaceKind, q: f64) -> f64 {
    match kind {
        SpaceKind::Euclidean => 2.0 * q.sqrt(),
        SpaceKind::Sphere => 2.0 * q.sqrt().min(1.0).asin(),
        SpaceKind::Hyperbolic => 2.0 * q.sqrt().asinh(),
    }
}

/// Mean of one bump over the sphere of geodesic radius `r` whose centre lies
/// at geodesic distance `d` from the bump centre.
fn bump_mean(kind: SpaceKind, n: usize, bump: &Bump, d: f64, r: f64, rule: &GaussRule) -> f64 {
    let a = bump.geodesic_radius;
    if (d - r).abs() >= a {
        return 0.0;
    }
    let q0 = half_chord(kind, d - r);
    let k = coupling(kind, d, r);
    let qa = half_chord(kind, a);
    if k <= 1e-300 {
        let s = (d - r) / a;
        return bump.amplitude * bump_profile(s * s);
    }
    let x = (qa - q0) / k;
    let gmax = if x >= 1.0 { PI } else { 2.0 * x.sqrt().asin() };
    let f = |g: f64| {
        let s = from_half_chord(kind, q0 + k * (0.5 * g).sin().powi(2)) / a;
        bump_profile(s * s) * g.sin().powi(n as i32 - 2)
    };
    let half = 0.5 * gmax;
    let integral = rule.integrate(0.0, half, f) + rule.integrate(half, gmax, f);
    bump.amplitude * integral / polar_normalizer(n)
}

fn reduced_row(phantom: &Phantom, center: &[f64], tgrid: &TGrid, rule: &GaussRule) -> Vec<f64> {
    let space = &phantom.space;
    let dists: Vec<f64> = phantom
        .bumps
        .iter()
        .map(|b| space.distance(center, &b.center.coords))
        .collect();
    (0..tgrid.len)
        .map(|j| {
            let r = space.section_geodesic_radius(tgrid.node(j));
            phantom
                .bumps
                .iter()
                .zip(&dists)
                .map(|(b, &d)| bump_mean(space.kind, space.n, b, d, r, rule))
                .sum()
        })
        .collect()
}

fn section_row<F: ScalarField + ?Sized>(
    field: &F,
    space: &SpaceSpec,
    frame: &SectionFrame,
    tgrid: &TGrid,
    rule: &SphereRule,
) -> Result<Vec<f64>> {
    let mut y = Vec::with_capacity(space.ambient_dim());
    (0..tgrid.len)
        .map(|j| {
            let t = tgrid.node(j);
            frame.check_argument(t)?;
            Ok(rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(u, w)| {
                    frame.node(t, u, &mut y);
                    w * field.value(&y)
                })
                .sum())
        })
        .collect()
}

/// Spherical means of `field` with the given integration rule; `order` is
/// the number of points per angle (sections) or of Gauss points per half
/// range of the polar angle (reduced).
pub fn forward_means_with<F: ScalarField + ?Sized>(
    field: &F,
    boundary: &BoundaryGrid,
    tgrid: &TGrid,
    order: usize,
    rule: SectionRule,
) -> Result<MeanData> {
    let space = boundary.space;
    let values = match (rule, field.as_phantom()) {
        (SectionRule::Reduced, Some(phantom)) => {
            if phantom.space != space {
                return Err(Error::DataMismatch("phantom and boundary live in different spaces".into()));
            }
            let gauss = GaussRule::new(order.max(2));
            boundary
                .centers
                .par_iter()
                .map(|c| reduced_row(phantom, &c.coords, tgrid, &gauss))
                .collect()
        }
        (SectionRule::Reduced, None) => {
            return Err(Error::WrongMethod("reduced rule needs a bump phantom".into()));
        }
        (SectionRule::Sections, _) => {
            let sphere_rule = SphereRule::new(space.n, order)?;
            boundary
                .centers
                .par_iter()
                .map(|c| {
                    let frame = SectionFrame::new(&space, c)?;
                    section_row(field, &space, &frame, tgrid, &sphere_rule)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(MeanData {
        space,
        boundary: boundary.clone(),
        tgrid: *tgrid,
        values,
        alpha: None,
    })
}

/// Spherical means `(Mf)(ξ_i, t_j)`. Bump phantoms use the reduced rule,
/// other fields product quadrature on the spheres.
pub fn forward_means<F: ScalarField + ?Sized>(
    field: &F,
    boundary: &BoundaryGrid,
    tgrid: &TGrid,
    order: usize,
) -> Result<MeanData> {
    let rule = if field.as_phantom().is_some() {
        SectionRule::Reduced
    } else {
        SectionRule::Sections
    };
    forward_means_with(field, boundary, tgrid, order, rule)
}

/// Euclidean EPD trace `M^α f = Γ(α+n/2)/Γ(n/2) I_η^α (Mf)` with
/// `η = n/2 - 1`, for `α ≥ (1-n)/2`.
pub fn epd_trace_euclidean<F: ScalarField + ?Sized>(
    field: &F,
    boundary: &BoundaryGrid,
    tgrid: &TGrid,
    alpha: f64,
    order: usize,
) -> Result<MeanData> {
    let space = boundary.space;
    if space.kind != SpaceKind::Euclidean {
        return Err(Error::InvalidSpace("Euclidean EPD trace on a curved space".into()));
    }
    let nf = space.n as f64;
    if alpha < (1.0 - nf) / 2.0 {
        return Err(Error::InvalidParameter(format!(
            "α = {alpha} below (1-n)/2 = {}",
            (1.0 - nf) / 2.0
        )));
    }
    let means = forward_means(field, boundary, tgrid, order)?;
    epd_from_means_euclidean(&means, alpha)
}

/// Applies the Euclidean trace relation to plain means.
pub fn epd_from_means_euclidean(means: &MeanData, alpha: f64) -> Result<MeanData> {
    let nf = means.space.n as f64;
    let mut out = means.clone();
    out.alpha = Some(alpha);
    if alpha == 0.0 {
        return Ok(out);
    }
    let op = ErdelyiKober::new(means.tgrid, FractionalSpec::new(nf / 2.0 - 1.0, alpha))?;
    let c = gamma(alpha + nf / 2.0) / gamma(nf / 2.0);
    out.values = means
        .values
        .par_iter()
        .map(|row| Ok(op.apply(row)?.into_iter().map(|v| c * v).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

/// Spherical EPD trace `g(ξ, arccos t)` for `α > 0`: with
/// `F = Mf (1-t²)^{n/2-1}` and `G = I₋^α F`,
/// `g = 2^{α-1} π^{-n/2} Γ(α+n/2) σ_{n-1} (1-t²)^{1-α-n/2} G`.
pub fn epd_trace_sphere<F: ScalarField + ?Sized>(
    field: &F,
    boundary: &BoundaryGrid,
    tgrid: &TGrid,
    alpha: f64,
    order: usize,
) -> Result<MeanData> {
    let space = boundary.space;
    if space.kind != SpaceKind::Sphere {
        return Err(Error::InvalidSpace("spherical EPD trace on another space".into()));
    }
    if alpha <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "spherical EPD traces are generated for α > 0 only, got {alpha}"
        )));
    }
    let means = forward_means(field, boundary, tgrid, order)?;
    epd_from_means_sphere(&means, alpha)
}

pub fn epd_from_means_sphere(means: &MeanData, alpha: f64) -> Result<MeanData> {
    let nf = means.space.n as f64;
    let grid = means.tgrid;
    let op = RiemannLiouville::new(grid, alpha)?;
    let c = 2f64.powf(alpha - 1.0) * PI.powf(-nf / 2.0) * gamma(alpha + nf / 2.0) * unit_sphere_area(means.space.n);
    let mut out = means.clone();
    out.alpha = Some(alpha);
    out.values = means
        .values
        .par_iter()
        .map(|row| {
            let f: Vec<f64> = row
                .iter()
                .enumerate()
                .map(|(j, v)| v * (1.0 - grid.node(j).powi(2)).powf(nf / 2.0 - 1.0))
                .collect();
            let g = op.apply(&f)?;
            Ok(g.iter()
                .enumerate()
                .map(|(j, v)| c * (1.0 - grid.node(j).powi(2)).powf(1.0 - alpha - nf / 2.0) * v)
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phantoms::FnField;
    use crate::spaces::boundary_grid;

    #[test]
    fn constant_field_has_unit_means() {
        for space in [
            SpaceSpec::euclidean(3, 1.0).unwrap(),
            SpaceSpec::sphere(3, 1.0).unwrap(),
            SpaceSpec::hyperbolic(2, 1.0).unwrap(),
        ] {
            let b = boundary_grid(&space, 6).unwrap();
            let g = default_tgrid(&space);
            let g = TGrid::new(g.start, g.end, 64).unwrap();
            let m = forward_means(&FnField(|_: &[f64]| 1.0), &b, &g, 6).unwrap();
            for v in m.values.iter().flatten() {
                assert!((v - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reduced_rule_matches_sections() {
        for space in [
            SpaceSpec::euclidean(3, 1.0).unwrap(),
            SpaceSpec::sphere(2, 1.0).unwrap(),
            SpaceSpec::hyperbolic(3, 1.0).unwrap(),
        ] {
            let chart = vec![0.2; space.n];
            let p = Phantom::single(space, &chart, 0.35, 1.3).unwrap();
            let b = boundary_grid(&space, 4).unwrap();
            let g = default_tgrid(&space);
            let g = TGrid::new(g.start, g.end, 64).unwrap();
            let reduced = forward_means_with(&p, &b, &g, 64, SectionRule::Reduced).unwrap();
            let sections = forward_means_with(&p, &b, &g, 384, SectionRule::Sections).unwrap();
            for (a, c) in reduced.values.iter().flatten().zip(sections.values.iter().flatten()) {
                assert!((a - c).abs() < 5e-6, "{:?}: {a} vs {c}", space.kind);
            }
        }
    }

    #[test]
    fn reduced_rule_self_converges() {
        let space = SpaceSpec::euclidean(3, 1.0).unwrap();
        let p = Phantom::single(space, &[0.2, 0.2, 0.2], 0.35, 1.3).unwrap();
        let b = boundary_grid(&space, 4).unwrap();
        let g = TGrid::new(1e-3, 2.0 - 1e-3, 128).unwrap();
        let a = forward_means(&p, &b, &g, 48).unwrap();
        let c = forward_means(&p, &b, &g, 96).unwrap();
        for (x, y) in a.values.iter().flatten().zip(c.values.iter().flatten()) {
            assert!((x - y).abs() < 1e-8);
        }
    }
}
