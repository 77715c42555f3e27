//! The three constant-curvature model spaces.
//!
//! Euclidean points are plain vectors in `R^n`. Sphere points are unit
//! vectors in `R^{n+1}`; the cap `B_θ` is centred at the north pole
//! `e_{n+1}`. Hyperbolic points live on the upper sheet of the hyperboloid
//! `x_{n+1}² - |x'|² = 1` and the ball `B` is centred at `e_{n+1}`.
//!
//! The chart used for reconstruction grids is `x' ∈ R^n` in all three cases,
//! lifted by `x_{n+1} = √(1 - |x'|²)` on the sphere and `√(1 + |x'|²)` on the
//! hyperboloid.

use crate::error::{Error, Result};
use crate::numerics::GaussRule;
use crate::special::unit_sphere_area;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const MANIFOLD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Euclidean,
    Sphere,
    Hyperbolic,
}

impl SpaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Euclidean => "euclidean",
            SpaceKind::Sphere => "sphere",
            SpaceKind::Hyperbolic => "hyperbolic",
        }
    }
}

/// A space together with the ball (or cap) of radius `radius` around its
/// origin. For the sphere `radius` is the cap angle `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    pub n: usize,
    pub radius: f64,
}

/// A point in the ambient coordinates of its space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacePoint {
    pub coords: Vec<f64>,
}

impl SpacePoint {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }
}

/// Centres on the boundary sphere with normalized quadrature weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryGrid {
    pub space: SpaceSpec,
    pub centers: Vec<SpacePoint>,
    pub weights: Vec<f64>,
}

impl BoundaryGrid {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist_euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl SpaceSpec {
    pub fn new(kind: SpaceKind, n: usize, radius: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpace(format!("dimension {n} < 2")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidSpace(format!("radius {radius} must be positive")));
        }
        if kind == SpaceKind::Sphere && radius > PI / 2.0 + 1e-15 {
            return Err(Error::InvalidSpace(format!("cap angle {radius} exceeds π/2")));
        }
        Ok(Self { kind, n, radius })
    }

    pub fn euclidean(n: usize, radius: f64) -> Result<Self> {
        Self::new(SpaceKind::Euclidean, n, radius)
    }

    pub fn sphere(n: usize, theta: f64) -> Result<Self> {
        Self::new(SpaceKind::Sphere, n, theta)
    }

    pub fn hyperbolic(n: usize, radius: f64) -> Result<Self> {
        Self::new(SpaceKind::Hyperbolic, n, radius)
    }

    /// Length of the ambient coordinate vector.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            SpaceKind::Euclidean => self.n,
            _ => self.n + 1,
        }
    }

    /// Validates `coords` as a point of the space.
    pub fn point(&self, coords: Vec<f64>) -> Result<SpacePoint> {
        self.check(&coords)?;
        Ok(SpacePoint { coords })
    }

    pub fn check(&self, coords: &[f64]) -> Result<()> {
        if coords.len() != self.ambient_dim() {
            return Err(Error::Dimension {
                expected: self.ambient_dim(),
                got: coords.len(),
            });
        }
        let ok = match self.kind {
            SpaceKind::Euclidean => coords.iter().all(|v| v.is_finite()),
            SpaceKind::Sphere => (dot(coords, coords) - 1.0).abs() <= MANIFOLD_TOL,
            SpaceKind::Hyperbolic => {
                let last = coords[self.n];
                let q = last * last - dot(&coords[..self.n], &coords[..self.n]);
                last > 0.0 && (q - 1.0).abs() <= MANIFOLD_TOL * last * last
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotOnManifold {
                space: self.kind.name(),
                coords: coords.to_vec(),
            })
        }
    }

    /// Lifts chart coordinates `x' ∈ R^n` to the space.
    pub fn lift(&self, chart: &[f64]) -> Result<SpacePoint> {
        if chart.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: chart.len(),
            });
        }
        let r2 = dot(chart, chart);
        let mut coords = chart.to_vec();
        match self.kind {
            SpaceKind::Euclidean => {}
            SpaceKind::Sphere => {
                if r2 >= 1.0 {
                    return Err(Error::StencilOutsideDomain(chart.to_vec()));
                }
                coords.push((1.0 - r2).sqrt());
            }
            SpaceKind::Hyperbolic => coords.push((1.0 + r2).sqrt()),
        }
        Ok(SpacePoint { coords })
    }

    /// Chart coordinates of a point.
    pub fn chart<'a>(&self, p: &'a SpacePoint) -> &'a [f64] {
        &p.coords[..self.n]
    }

    /// The origin: `0`, or the pole `e_{n+1}`.
    pub fn origin(&self) -> SpacePoint {
        let mut coords = vec![0.0; self.ambient_dim()];
        if self.kind != SpaceKind::Euclidean {
            coords[self.n] = 1.0;
        }
        SpacePoint { coords }
    }

    /// Geodesic distance, evaluated through chord lengths to stay accurate for
    /// nearby points.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match self.kind {
            SpaceKind::Euclidean => dist_euclid(a, b),
            SpaceKind::Sphere => 2.0 * (0.5 * dist_euclid(a, b)).min(1.0).asin(),
            SpaceKind::Hyperbolic => {
                let n = self.n;
                let dx = dist_euclid(&a[..n], &b[..n]);
                let dl = a[n] - b[n];
                let q = ((dx - dl) * (dx + dl)).max(0.0);
                2.0 * (0.5 * q.sqrt()).asinh()
            }
        }
    }

    pub fn distance_from_origin(&self, a: &[f64]) -> f64 {
        self.distance(a, &self.origin().coords)
    }

    /// Area of the boundary sphere `∂B`.
    pub fn boundary_area(&self) -> f64 {
        let s = unit_sphere_area(self.n);
        let k = (self.n - 1) as i32;
        match self.kind {
            SpaceKind::Euclidean => s * self.radius.powi(k),
            SpaceKind::Sphere => s * self.radius.sin().powi(k),
            SpaceKind::Hyperbolic => s * self.radius.sinh().powi(k),
        }
    }

    /// Range of the data argument for spheres centred on `∂B` meeting `B`:
    /// the radius `t ∈ (0, 2R)`, `t = ξ·y ∈ (cos 2θ, 1)` or
    /// `t = [ξ, y] ∈ (1, cosh 2R)`.
    pub fn t_range(&self) -> (f64, f64) {
        let r = self.radius;
        match self.kind {
            SpaceKind::Euclidean => (0.0, 2.0 * r),
            SpaceKind::Sphere => ((2.0 * r).cos(), 1.0),
            SpaceKind::Hyperbolic => (1.0, (2.0 * r).cosh()),
        }
    }

    /// Admissible range of the section argument.
    pub fn section_range(&self) -> (f64, f64) {
        match self.kind {
            SpaceKind::Euclidean => (0.0, 2.0 * self.radius),
            SpaceKind::Sphere => (-1.0, 1.0),
            SpaceKind::Hyperbolic => (1.0, f64::INFINITY),
        }
    }

    /// Data argument of the sphere through `y` centred at `center`:
    /// `|y - ξ|`, `ξ·y` or `[ξ, y]`.
    pub fn data_argument(&self, center: &[f64], y: &[f64]) -> f64 {
        match self.kind {
            SpaceKind::Euclidean => dist_euclid(center, y),
            SpaceKind::Sphere => dot(center, y),
            SpaceKind::Hyperbolic => minkowski(center, y),
        }
    }

    /// Geodesic radius of the section with data argument `t`.
    pub fn section_geodesic_radius(&self, t: f64) -> f64 {
        match self.kind {
            SpaceKind::Euclidean => t,
            SpaceKind::Sphere => t.clamp(-1.0, 1.0).acos(),
            SpaceKind::Hyperbolic => t.max(1.0).acosh(),
        }
    }

    /// Inverse of [`Self::section_geodesic_radius`].
    pub fn section_argument(&self, r: f64) -> f64 {
        match self.kind {
            SpaceKind::Euclidean => r,
            SpaceKind::Sphere => r.cos(),
            SpaceKind::Hyperbolic => r.cosh(),
        }
    }
}

fn minkowski(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() - 1;
    x[n] * y[n] - dot(&x[..n], &y[..n])
}

/// `[x, y] = x_{n+1} y_{n+1} - x'·y'` for points on the hyperboloid.
pub fn minkowski_form(x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
    if x.coords.len() != y.coords.len() || x.coords.len() < 2 {
        return Err(Error::Dimension {
            expected: x.coords.len(),
            got: y.coords.len(),
        });
    }
    let space = SpaceSpec {
        kind: SpaceKind::Hyperbolic,
        n: x.coords.len() - 1,
        radius: 1.0,
    };
    space.check(&x.coords)?;
    space.check(&y.coords)?;
    Ok(minkowski(&x.coords, &y.coords))
}

/// Normalized quadrature on the unit sphere `S^{d-1} ⊂ R^d`: equally spaced
/// azimuth with `order` points and, for each further polar angle,
/// `⌈order/2⌉` Gaussian points in `u = cos γ`: Gauss-Legendre when the polar
/// weight `sin^k γ` has odd `k`, Gauss-Chebyshev of the second kind when `k`
/// is even.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub dim: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn new(dim: usize, order: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!("sphere rule in R^{dim}")));
        }
        if order < 4 {
            return Err(Error::TooCoarse(format!(
                "order {order} < 4 points per angle"
            )));
        }
        let mut nodes: Vec<Vec<f64>> = (0..order)
            .map(|j| {
                let phi = 2.0 * PI * j as f64 / order as f64;
                vec![phi.cos(), phi.sin()]
            })
            .collect();
        let mut weights = vec![1.0; order];
        let polar = order.div_ceil(2);
        for d in 3..=dim {
            let k = d - 2;
            let mut pairs = Vec::with_capacity(polar);
            if k % 2 == 1 {
                let rule = GaussRule::new(polar);
                for (u, w) in rule.mapped(-1.0, 1.0) {
                    let s2: f64 = 1.0 - u * u;
                    pairs.push((s2.sqrt(), u, w * s2.powi((k as i32 - 1) / 2)));
                }
            } else {
                // sin^k γ dγ = √(1-u²) (1-u²)^{(k-2)/2} du: Gauss-Chebyshev of
                // the second kind in u = cos γ.
                for i in 1..=polar {
                    let g = PI * i as f64 / (polar + 1) as f64;
                    let (s, u) = g.sin_cos();
                    let w = PI / (polar + 1) as f64 * s * s;
                    pairs.push((s, u, w * (s * s).powi((k as i32 - 2) / 2)));
                }
            }
            let mut next_nodes = Vec::with_capacity(nodes.len() * polar);
            let mut next_weights = Vec::with_capacity(nodes.len() * polar);
            for (sin_g, cos_g, wg) in &pairs {
                for (p, w) in nodes.iter().zip(&weights) {
                    let mut q: Vec<f64> = p.iter().map(|v| v * sin_g).collect();
                    q.push(*cos_g);
                    next_nodes.push(q);
                    next_weights.push(w * wg);
                }
            }
            nodes = next_nodes;
            weights = next_weights;
        }
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        Ok(Self { dim, nodes, weights })
    }
}

/// Discretization of `∂B` with `m` points per angle.
pub fn boundary_grid(space: &SpaceSpec, m: usize) -> Result<BoundaryGrid> {
    let rule = SphereRule::new(space.n, m)?;
    let (a, b) = match space.kind {
        SpaceKind::Euclidean => (space.radius, 0.0),
        SpaceKind::Sphere => (space.radius.sin(), space.radius.cos()),
        SpaceKind::Hyperbolic => (space.radius.sinh(), space.radius.cosh()),
    };
    let centers = rule
        .nodes
        .iter()
        .map(|u| {
            let mut c: Vec<f64> = u.iter().map(|v| a * v).collect();
            if space.kind != SpaceKind::Euclidean {
                c.push(b);
            }
            SpacePoint { coords: c }
        })
        .collect();
    Ok(BoundaryGrid {
        space: *space,
        centers,
        weights: rule.weights,
    })
}

/// Nodes and weights on a sphere of integration.
#[derive(Debug, Clone, Default)]
pub struct WeightedPoints {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl WeightedPoints {
    pub fn integrate<F: FnMut(&[f64]) -> f64>(&self, mut f: F) -> f64 {
        self.points.iter().zip(&self.weights).map(|(p, w)| w * f(p)).sum()
    }
}

/// Parametrization of the spheres centred at one point, reusable across `t`.
#[derive(Debug, Clone)]
pub struct SectionFrame {
    space: SpaceSpec,
    center: Vec<f64>,
    /// Orthonormal basis of the tangent directions, one vector per column
    /// index (sphere only).
    basis: Vec<Vec<f64>>,
}

impl SectionFrame {
    pub fn new(space: &SpaceSpec, center: &SpacePoint) -> Result<Self> {
        space.check(&center.coords)?;
        let basis = match space.kind {
            SpaceKind::Sphere => complete_basis(&center.coords),
            _ => Vec::new(),
        };
        Ok(Self {
            space: *space,
            center: center.coords.clone(),
            basis,
        })
    }

    /// Point of the sphere with argument `t` in direction `u ∈ S^{n-1}`.
    pub fn node(&self, t: f64, u: &[f64], out: &mut Vec<f64>) {
        out.clear();
        let x = &self.center;
        match self.space.kind {
            SpaceKind::Euclidean => out.extend(x.iter().zip(u).map(|(c, v)| c - t * v)),
            SpaceKind::Sphere => {
                let s = (1.0 - t * t).max(0.0).sqrt();
                out.extend(x.iter().map(|c| t * c));
                for (e, v) in self.basis.iter().zip(u) {
                    for (o, ei) in out.iter_mut().zip(e) {
                        *o += s * v * ei;
                    }
                }
            }
            SpaceKind::Hyperbolic => {
                let n = self.space.n;
                let s = (t * t - 1.0).max(0.0).sqrt();
                let gamma = x[n];
                let xp = &x[..n];
                let xu = dot(xp, u);
                let k = xu / (1.0 + gamma);
                out.extend((0..n).map(|i| s * (u[i] + xp[i] * k) + t * xp[i]));
                out.push(s * xu + t * gamma);
            }
        }
    }

    pub fn check_argument(&self, t: f64) -> Result<()> {
        let (lo, hi) = self.space.section_range();
        let ok = match self.space.kind {
            SpaceKind::Euclidean => t > lo && t < hi,
            SpaceKind::Sphere => t > lo && t < hi,
            SpaceKind::Hyperbolic => t > lo,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                what: "section argument t",
                value: t,
                lo,
                hi,
            })
        }
    }
}

/// Gram-Schmidt completion of the unit vector `x` to an orthonormal basis;
/// returns the `len(x) - 1` vectors orthogonal to `x`.
fn complete_basis(x: &[f64]) -> Vec<Vec<f64>> {
    let d = x.len();
    let skip = (0..d)
        .max_by(|&i, &j| x[i].abs().total_cmp(&x[j].abs()))
        .unwrap_or(0);
    let mut basis: Vec<Vec<f64>> = vec![x.to_vec()];
    for k in (0..d).filter(|&k| k != skip) {
        let mut v = vec![0.0; d];
        v[k] = 1.0;
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= c * bi);
            }
        }
        let nv = norm(&v);
        v.iter_mut().for_each(|vi| *vi /= nv);
        basis.push(v);
    }
    basis.remove(0);
    basis
}

/// Nodes and normalized weights on the sphere with argument `t` around
/// `center`: `Σ w_i f(y_i)` approximates the spherical mean.
pub fn section_quadrature(space: &SpaceSpec, center: &SpacePoint, t: f64, order: usize) -> Result<WeightedPoints> {
    let frame = SectionFrame::new(space, center)?;
    frame.check_argument(t)?;
    let rule = SphereRule::new(space.n, order)?;
    let mut points = Vec::with_capacity(rule.nodes.len());
    for u in &rule.nodes {
        let mut y = Vec::with_capacity(space.ambient_dim());
        frame.node(t, u, &mut y);
        points.push(y);
    }
    Ok(WeightedPoints {
        points,
        weights: rule.weights,
    })
}

/// The parameter `h` governing the kernel integral: `(|x|² - |y|²)/(2R|x-y|)`
/// in `R^n`, `(x_{n+1} - y_{n+1})/|x' - y'|` times `cot θ` on the sphere and
/// times `coth R` on the hyperboloid.
pub fn h_parameter(space: &SpaceSpec, x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
    space.check(&x.coords)?;
    space.check(&y.coords)?;
    let n = space.n;
    let sep = dist_euclid(&x.coords[..n], &y.coords[..n]);
    let scale = norm(&x.coords).max(norm(&y.coords)).max(1.0);
    if sep <= 1e-14 * scale {
        return Err(Error::DegeneratePair);
    }
    let r = space.radius;
    Ok(match space.kind {
        SpaceKind::Euclidean => (dot(&x.coords, &x.coords) - dot(&y.coords, &y.coords)) / (2.0 * r * sep),
        SpaceKind::Sphere => (x.coords[n] - y.coords[n]) / sep / r.tan(),
        SpaceKind::Hyperbolic => (x.coords[n] - y.coords[n]) / sep / r.tanh(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_rule_integrates_monomials() {
        // Mean of u_1² over S^{d-1} is 1/d, of u_1⁴ is 3/(d(d+2)).
        for d in 2..=6 {
            let r = SphereRule::new(d, 8).unwrap();
            let m2: f64 = r.nodes.iter().zip(&r.weights).map(|(u, w)| w * u[0].powi(2)).sum();
            let m4: f64 = r.nodes.iter().zip(&r.weights).map(|(u, w)| w * u[d - 1].powi(4)).sum();
            assert!((m2 - 1.0 / d as f64).abs() < 1e-13, "{d} {}", m2 - 1.0 / d as f64);
            assert!((m4 - 3.0 / (d * (d + 2)) as f64).abs() < 1e-13, "{d} {m2} {m4}");
            for u in &r.nodes {
                assert!((norm(u) - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn basis_is_orthonormal() {
        let x = [0.3, -0.5, 0.1, (1.0f64 - 0.35).sqrt()];
        let b = complete_basis(&x);
        assert_eq!(b.len(), 3);
        for (i, u) in b.iter().enumerate() {
            assert!(dot(u, &x).abs() < 1e-14);
            for (j, v) in b.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot(u, v) - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn hyperbolic_nodes_lie_on_section() {
        let s = SpaceSpec::hyperbolic(3, 1.0).unwrap();
        let c = s.lift(&[0.4, -0.2, 0.7]).unwrap();
        let q = section_quadrature(&s, &c, 1.3, 6).unwrap();
        for y in &q.points {
            s.check(y).unwrap();
            assert!((minkowski(&c.coords, y) - 1.3).abs() < 1e-12);
        }
    }

    #[test]
    fn distance_matches_closed_forms() {
        let s = SpaceSpec::sphere(2, 1.0).unwrap();
        let a = s.lift(&[0.3, 0.1]).unwrap();
        let b = s.lift(&[-0.2, 0.4]).unwrap();
        let want = dot(&a.coords, &b.coords).acos();
        assert!((s.distance(&a.coords, &b.coords) - want).abs() < 1e-13);
        let h = SpaceSpec::hyperbolic(2, 1.0).unwrap();
        let a = h.lift(&[0.3, 0.1]).unwrap();
        let b = h.lift(&[-0.2, 0.4]).unwrap();
        let want = minkowski(&a.coords, &b.coords).acosh();
        assert!((h.distance(&a.coords, &b.coords) - want).abs() < 1e-12);
    }
}
