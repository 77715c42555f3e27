use super::constants::constants;
use super::reconstructor::{backproject, Method, Reconstructor};
use crate::error::{Error, Result};
use crate::forward::MeanData;
use crate::numerics::{integrate_graded, GaussRule};
use crate::phantoms::{bump_profile, Bump, Phantom, ScalarField};
use crate::spaces::{dist_euclid, SpaceKind, SpacePoint};
use crate::special::{gamma, unit_sphere_area};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

fn rule() -> &'static GaussRule {
    static RULE: OnceLock<GaussRule> = OnceLock::new();
    RULE.get_or_init(|| GaussRule::new(24))
}

/// `∫_0^b g` over `panels` equal panels.
fn composite<G: FnMut(f64) -> f64>(mut g: G, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|k| rule().integrate(a + k as f64 * h, a + (k + 1) as f64 * h, &mut g))
        .sum()
}

/// `∫ w(|y-c|²/ρ²) K(|x-y|) dy` over `R^n` for one bump, by the shell
/// theorem: the mean of `K(|x-y|)` over `|y-c| = s` is `K(max(d, s))` for
/// the Newtonian and logarithmic kernels, `d = |x-c|`.
fn shell_integral(b: &Bump, x: &[f64], n: usize, kernel: impl Fn(f64) -> f64) -> f64 {
    let rho = b.geodesic_radius;
    let d = dist_euclid(x, &b.center.coords);
    let radial = |s: f64| bump_profile((s / rho).powi(2)) * s.powi(n as i32 - 1) * kernel(d.max(s));
    let inner = if d > 0.0 && d < rho {
        composite(&radial, 0.0, d, 8) + composite(&radial, d, rho, 8)
    } else {
        composite(&radial, 0.0, rho, 16)
    };
    b.amplitude * unit_sphere_area(n) * inner
}

fn euclidean_phantom(phantom: &Phantom, x: &SpacePoint, need: fn(usize) -> bool, what: &str) -> Result<()> {
    let s = phantom.space;
    if s.kind != SpaceKind::Euclidean || !need(s.n) {
        return Err(Error::WrongMethod(format!("{what} on {} of dimension {}", s.kind.name(), s.n)));
    }
    s.check(&x.coords)
}

/// `∫ f(y) |x-y|^{2-n} dy` for a Euclidean phantom, `n ≥ 3`.
fn newton_integral(phantom: &Phantom, x: &SpacePoint) -> f64 {
    let n = phantom.space.n;
    phantom
        .bumps
        .iter()
        .map(|b| shell_integral(b, &x.coords, n, |r| r.powf(2.0 - n as f64)))
        .sum()
}

/// Riesz potential of order 2,
/// `Γ(n/2-1)/(4π^{n/2}) ∫ f(y) |x-y|^{2-n} dy`, for `n ≥ 3`.
pub fn riesz_potential(phantom: &Phantom, x: &SpacePoint) -> Result<f64> {
    euclidean_phantom(phantom, x, |n| n >= 3, "Riesz potential")?;
    let nf = phantom.space.n as f64;
    Ok(gamma(nf / 2.0 - 1.0) / (4.0 * PI.powf(nf / 2.0)) * newton_integral(phantom, x))
}

/// Logarithmic potential `(1/2π) ∫ f(y) log|x-y| dy` in the plane.
pub fn log_potential(phantom: &Phantom, x: &SpacePoint) -> Result<f64> {
    euclidean_phantom(phantom, x, |n| n == 2, "logarithmic potential")?;
    Ok(phantom
        .bumps
        .iter()
        .map(|b| shell_integral(b, &x.coords, 2, f64::ln))
        .sum::<f64>()
        / (2.0 * PI))
}

/// `∫_B f dy` with the Riemannian volume of the space.
pub fn total_mass(phantom: &Phantom) -> f64 {
    let n = phantom.space.n;
    let jac: fn(f64) -> f64 = match phantom.space.kind {
        SpaceKind::Euclidean => |r| r,
        SpaceKind::Sphere => f64::sin,
        SpaceKind::Hyperbolic => f64::sinh,
    };
    phantom
        .bumps
        .iter()
        .map(|b| {
            let rho = b.geodesic_radius;
            b.amplitude
                * unit_sphere_area(n)
                * composite(|r| bump_profile((r / rho).powi(2)) * jac(r).powi(n as i32 - 1), 0.0, rho, 16)
        })
        .sum()
}

const ANGLES: usize = 256;
const RADIAL_PANELS: usize = 48;

/// Chart logarithmic potential on the sphere or hyperboloid, `n = 2`:
/// `(1/2π) ∫_B f(y) log|x' - y'| dy` with the Riemannian area element
/// `dy = dy'/y_3`, in polar coordinates around `x'`.
pub fn chart_log_potential<F: ScalarField + ?Sized>(
    field: &F,
    space: &crate::spaces::SpaceSpec,
    x: &SpacePoint,
) -> Result<f64> {
    if space.kind == SpaceKind::Euclidean || space.n != 2 {
        return Err(Error::WrongMethod("chart log potential needs a curved space with n = 2".into()));
    }
    space.check(&x.coords)?;
    let r = space.radius;
    let chart_radius = match space.kind {
        SpaceKind::Sphere => r.sin(),
        _ => r.sinh(),
    };
    let xp = [x.coords[0], x.coords[1]];
    let rmax = chart_radius + (xp[0] * xp[0] + xp[1] * xp[1]).sqrt();
    let ring = |rho: f64| -> f64 {
        let mut acc = 0.0;
        for k in 0..ANGLES {
            let phi = 2.0 * PI * k as f64 / ANGLES as f64;
            let y = [xp[0] + rho * phi.cos(), xp[1] + rho * phi.sin()];
            if y[0] * y[0] + y[1] * y[1] >= chart_radius * chart_radius {
                continue;
            }
            if let Ok(p) = space.lift(&y) {
                acc += field.value(&p.coords) / p.coords[2];
            }
        }
        acc * 2.0 * PI / ANGLES as f64
    };
    let g = |rho: f64| if rho > 0.0 { ring(rho) * rho * rho.ln() } else { 0.0 };
    let h = rmax / RADIAL_PANELS as f64;
    let first = integrate_graded(g, 0.0, h, rule(), 1e-12);
    Ok((first + composite(g, h, rmax, RADIAL_PANELS - 1)) / (2.0 * PI))
}

/// Both sides of a back-projection identity at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentitySides {
    /// Potential computed by quadrature over the phantom.
    pub potential: f64,
    /// The same potential computed from the spherical means.
    pub from_means: f64,
}

/// The identities linking back-projected means to potentials.
///
/// * `R^n`, odd `n ≥ 3`: `λ_n ∫ f(y)/|x-y|^{n-2} dy` against
///   `δ_n/(2R^{n-1}) ∫_{∂B} D^{n-3}[t^{n-2} Mf](ξ, |x-ξ|) dξ`; even `n ≥ 4`
///   against `-δ_n/(π R^{n-1}) ∫_{∂B} dξ ∫ t D^{n-2}[t^{n-2} Mf] log|t² - |x-ξ|²| dt`.
/// * `R^2`: `I_* f` against the normalized back-projection of
///   `∫ Mf(ξ,t) log|t² - |x-ξ|²| t dt` plus `c_f = -(log R/2π) ∫f`.
/// * Sphere and hyperboloid, `n = 2`: the chart log potential against the
///   normalized back-projection of `∫ Mf(ξ,τ) log|τ - a(ξ,x)| dτ` plus
///   `c_f = -(1/2π) log(s/2) ∫f` with `s = sin θ` or `sinh R`.
pub fn identity_sides(data: &MeanData, phantom: &Phantom, x: &SpacePoint) -> Result<IdentitySides> {
    let space = data.space;
    if phantom.space != space {
        return Err(Error::DataMismatch("phantom and data live in different spaces".into()));
    }
    space.check(&x.coords)?;
    let n = space.n;
    let r = space.radius;
    if space.kind != SpaceKind::Euclidean && n != 2 {
        return Err(Error::WrongMethod("curved-space identities are implemented for n = 2".into()));
    }
    let rec = Reconstructor::new(data, Method::Direct)?;
    let raw = backproject(&data.boundary, rec.profiles(), x)?;
    let mass = total_mass(phantom);
    let c = constants(n, r, None)?;
    let area = space.boundary_area();
    Ok(match (space.kind, n) {
        (SpaceKind::Euclidean, 2) => IdentitySides {
            potential: log_potential(phantom, x)?,
            from_means: raw - r.ln() / (2.0 * PI) * mass,
        },
        (SpaceKind::Euclidean, _) => {
            let delta = c.delta_n.unwrap_or(0.0);
            let k = if n % 2 == 1 {
                delta / (2.0 * r.powi(n as i32 - 1))
            } else {
                -delta / (PI * r.powi(n as i32 - 1))
            };
            IdentitySides {
                potential: c.lambda_n * newton_integral(phantom, x),
                from_means: k * area * raw,
            }
        }
        (kind, _) => {
            let s = if kind == SpaceKind::Sphere { r.sin() } else { r.sinh() };
            IdentitySides {
                potential: chart_log_potential(phantom, &space, x)?,
                from_means: raw - (s / 2.0).ln() / (2.0 * PI) * mass,
            }
        }
    })
}
