//! Numerical checks of the special-function lemmas, the potential
//! identities and the fractional operators, printed as a pass/fail table.

use anyhow::{bail, Result};
use geomeans::forward::{default_tgrid, forward_means};
use geomeans::fractional::{erdelyi_kober, erdelyi_kober_ac, riemann_liouville_right, FractionalSpec};
use geomeans::inversion::{identity_sides, log_potential, riesz_potential};
use geomeans::numerics::laplacian_fd;
use geomeans::phantoms::bump_profile;
use geomeans::spaces::boundary_grid;
use geomeans::special::{
    chebyshev_pv, chebyshev_u, g_alpha_continued, g_alpha_direct, gamma, log_circle_integral, log_form_integral,
    regularized_power_integral, Gaussian,
};
use geomeans::{Phantom, SampledProfile, ScalarField, SpacePoint, SpaceSpec, TGrid};
use std::f64::consts::PI;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Identities,
    Fractional,
    All,
}

impl std::str::FromStr for Suite {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lemmas" => Suite::Lemmas,
            "identities" => Suite::Identities,
            "fractional" => Suite::Fractional,
            "all" => Suite::All,
            _ => bail!("unknown suite {s:?}; expected lemmas, identities, fractional or all"),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: impl Into<String>, computed: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            computed,
            expected,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        (self.computed - self.expected).abs() <= self.tolerance
    }
}

fn lemma_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in 3..=6 {
        let want = gamma((n as f64 - 1.0) / 2.0);
        for h in [-0.8, 0.0, 0.8] {
            let got = g_alpha_continued(n, 3.0 - n as f64, h)?;
            out.push(Check::new(format!("g_alpha_limit n={n} h={h}"), got, want, 1e-6 * want));
        }
    }
    for n in [3, 4, 5] {
        for alpha in [0.5, 1.0, 1.7] {
            let h = 0.3;
            out.push(Check::new(
                format!("g_alpha_continued n={n} alpha={alpha} h={h}"),
                g_alpha_continued(n, alpha, h)?,
                g_alpha_direct(n, alpha, h)?,
                1e-8,
            ));
        }
    }
    for h in [-0.9, 0.0, 0.9] {
        out.push(Check::new(
            format!("log_circle h={h}"),
            log_circle_integral(h)?,
            -2.0 * PI * 2f64.ln(),
            1e-8,
        ));
    }
    for (nn, h) in [(1, 0.3), (2, 0.0), (3, -0.6), (5, 0.3)] {
        out.push(Check::new(
            format!("chebyshev_pv n={nn} h={h}"),
            chebyshev_pv(nn, h)?,
            PI * chebyshev_u(nn - 1, h),
            1e-6,
        ));
    }
    for alpha in [-4.0, -3.0, -2.0, -1.0, 0.5] {
        out.push(Check::new(
            format!("gaussian_power_integral alpha={alpha}"),
            regularized_power_integral(&Gaussian, alpha, None)?,
            1.0,
            1e-6,
        ));
    }
    for m in [1, 2] {
        let alpha = 1.0 - 2.0 * m as f64;
        out.push(Check::new(
            format!("gaussian_log_form m={m}"),
            regularized_power_integral(&Gaussian, alpha, None)?,
            log_form_integral(&Gaussian, m),
            1e-6,
        ));
    }
    Ok(out)
}

fn bump(space: SpaceSpec) -> Result<Phantom> {
    let mut c = vec![0.0; space.n];
    c[0] = 0.2;
    c[1] = 0.1;
    Ok(Phantom::single(space, &c, 0.4 * space.radius, 1.0)?)
}

fn identity_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let s3 = SpaceSpec::euclidean(3, 1.0)?;
    let p3 = bump(s3)?;
    for x in [[0.2, 0.1, 0.0], [0.3, 0.2, 0.1]] {
        let lap = laplacian_fd(|y| riesz_potential(&p3, &SpacePoint::new(y.to_vec())), &x, 1e-2)?;
        let f = p3.value(&x);
        out.push(Check::new(format!("riesz_potential n=3 x={x:?}"), -lap, f, 0.01 * f));
    }
    let s2 = SpaceSpec::euclidean(2, 1.0)?;
    let p2 = bump(s2)?;
    for x in [[0.2, 0.1], [0.3, 0.2]] {
        let lap = laplacian_fd(|y| log_potential(&p2, &SpacePoint::new(y.to_vec())), &x, 1e-2)?;
        let f = p2.value(&x);
        out.push(Check::new(format!("log_potential n=2 x={x:?}"), lap, f, 0.01 * f));
    }
    let b = boundary_grid(&s3, 48)?;
    let data = forward_means(&p3, &b, &default_tgrid(&s3), 48)?;
    for x in [[0.2, 0.1, 0.0], [0.0, 0.0, 0.0], [-0.3, 0.2, 0.1]] {
        let sides = identity_sides(&data, &p3, &SpacePoint::new(x.to_vec()))?;
        out.push(Check::new(
            format!("newton_identity n=3 x={x:?}"),
            sides.from_means,
            sides.potential,
            0.01 * sides.potential.abs(),
        ));
    }
    for space in [
        SpaceSpec::euclidean(2, 1.0)?,
        SpaceSpec::sphere(2, 1.0)?,
        SpaceSpec::hyperbolic(2, 1.0)?,
    ] {
        let phantom = bump(space)?;
        let b = boundary_grid(&space, 128)?;
        let data = forward_means(&phantom, &b, &default_tgrid(&space), 48)?;
        for x in [[0.0, 0.0], [0.3, 0.2], [-0.4, 0.1]] {
            let sides = identity_sides(&data, &phantom, &space.lift(&x)?)?;
            out.push(Check::new(
                format!("log_identity {} x={x:?}", space.kind.name()),
                sides.from_means,
                sides.potential,
                1e-3,
            ));
        }
    }
    Ok(out)
}

fn sup_diff(a: &SampledProfile, b: &SampledProfile) -> f64 {
    a.samples
        .iter()
        .zip(&b.samples)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, |m: f64, d| if m.is_nan() || d.is_nan() { f64::NAN } else { m.max(d) })
}

fn fractional_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let g = TGrid::new(0.05, 2.0, 400)?;
    let one = SampledProfile::from_fn(g, |_| 1.0);
    for eta in [0.0, 0.5] {
        let r = erdelyi_kober(&one, FractionalSpec::new(eta, 1.0))?;
        let want = SampledProfile::from_fn(g, |_| 1.0 / (eta + 1.0));
        out.push(Check::new(format!("erdelyi_kober constant eta={eta}"), sup_diff(&r, &want), 0.0, 1e-10));
    }
    let ek_grid = TGrid::new(0.01, 2.0, 800)?;
    let ek_bump = SampledProfile::from_fn(ek_grid, |t| bump_profile(((t - 1.0) / 0.5).powi(2)));
    let rl_grid = TGrid::new(-0.99, 0.99, 800)?;
    let rl_bump = SampledProfile::from_fn(rl_grid, |t| bump_profile((t / 0.5).powi(2)));
    for alpha in [0.5, 1.0, 1.5] {
        let fwd = erdelyi_kober(&ek_bump, FractionalSpec::new(0.5, alpha))?;
        let back = erdelyi_kober_ac(&fwd, FractionalSpec::new(0.5 + alpha, -alpha))?;
        out.push(Check::new(
            format!("erdelyi_kober round trip alpha={alpha}"),
            sup_diff(&back, &ek_bump),
            0.0,
            1e-4,
        ));
        let fwd = riemann_liouville_right(&rl_bump, alpha)?;
        let back = riemann_liouville_right(&fwd, -alpha)?;
        out.push(Check::new(
            format!("riemann_liouville round trip alpha={alpha}"),
            sup_diff(&back, &rl_bump),
            0.0,
            1e-4,
        ));
    }
    Ok(out)
}

pub fn run(suite: Suite) -> Result<Vec<Check>> {
    Ok(match suite {
        Suite::Lemmas => lemma_checks()?,
        Suite::Identities => identity_checks()?,
        Suite::Fractional => fractional_checks()?,
        Suite::All => {
            let mut v = lemma_checks()?;
            v.extend(identity_checks()?);
            v.extend(fractional_checks()?);
            v
        }
    })
}

/// Prints one line per check: name, computed, expected, tolerance, verdict.
pub fn print_table<W: Write>(mut w: W, checks: &[Check]) -> Result<()> {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
    writeln!(w, "{:<width$}  {:>22}  {:>22}  {:>9}  result", "name", "computed", "expected", "tol")?;
    for c in checks {
        writeln!(
            w,
            "{:<width$}  {:>22}  {:>22}  {:>9.1e}  {}",
            c.name,
            c.computed,
            c.expected,
            c.tolerance,
            if c.passed() { "PASS" } else { "FAIL" }
        )?;
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    writeln!(w, "{} checks, {} failed", checks.len(), failed)?;
    Ok(())
}
