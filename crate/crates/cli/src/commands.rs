//! The subcommands, callable without going through the argument parser.

use crate::config::RunConfig;
use crate::meanfile::{load_means, save_means};
use crate::pgm::{rasterize, write_pgm, Slice};
use crate::reportfile::{load_report, save_report};
use crate::verify::{self, Check, Suite};
use anyhow::{bail, Context, Result};
use geomeans::forward::{epd_trace_euclidean, epd_trace_sphere, forward_means};
use geomeans::inversion::{recover_means_euclidean, recover_means_sphere};
use geomeans::{MeanData, ReconstructionReport, Reconstructor, SpaceKind};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// Plain means, or EPD traces when the configuration sets `alpha`.
pub fn generate(cfg: &RunConfig) -> Result<MeanData> {
    let phantom = cfg.phantom()?;
    let boundary = cfg.boundary()?;
    let tgrid = cfg.tgrid()?;
    let order = cfg.grids.quadrature_order;
    Ok(match (cfg.alpha, phantom.space.kind) {
        (None, _) => forward_means(&phantom, &boundary, &tgrid, order)?,
        (Some(a), SpaceKind::Euclidean) => epd_trace_euclidean(&phantom, &boundary, &tgrid, a, order)?,
        (Some(a), SpaceKind::Sphere) => epd_trace_sphere(&phantom, &boundary, &tgrid, a, order)?,
        (Some(_), SpaceKind::Hyperbolic) => bail!("EPD traces are available in Euclidean space and on the sphere"),
    })
}

/// Inverts means or EPD traces at the configured points and compares with
/// the configured phantom.
pub fn reconstruct(cfg: &RunConfig, data: &MeanData) -> Result<ReconstructionReport> {
    let space = cfg.space()?;
    if data.space != space {
        bail!(
            "data live in {} n={} R={}, the config in {} n={} R={}",
            data.space.kind.name(),
            data.space.n,
            data.space.radius,
            space.kind.name(),
            space.n,
            space.radius
        );
    }
    let means = match (data.alpha, space.kind) {
        (None, _) => data.clone(),
        (Some(_), SpaceKind::Euclidean) => recover_means_euclidean(data)?,
        (Some(_), SpaceKind::Sphere) => recover_means_sphere(data)?,
        (Some(_), SpaceKind::Hyperbolic) => bail!("no EPD inversion on the hyperboloid"),
    };
    let mut rec = Reconstructor::new(&means, cfg.method)?.with_hyperbolic_prefactor(cfg.hyperbolic_prefactor);
    if let Some(h) = cfg.grids.fd_step {
        rec = rec.with_fd_step(h)?;
    }
    Ok(ReconstructionReport::compute(&rec, &cfg.phantom()?, cfg.eval_points()?)?)
}

pub fn cmd_forward(cfg: &RunConfig, out: &Path) -> Result<MeanData> {
    let data = generate(cfg)?;
    save_means(out, &data)?;
    Ok(data)
}

pub fn cmd_invert(cfg: &RunConfig, means: &Path, out: &Path) -> Result<ReconstructionReport> {
    let data = load_means(means)?;
    if data.alpha != cfg.alpha {
        bail!("means file carries alpha = {:?}, config alpha = {:?}", data.alpha, cfg.alpha);
    }
    let report = reconstruct(cfg, &data)?;
    save_report(out, &report)?;
    Ok(report)
}

pub fn cmd_roundtrip(cfg: &RunConfig, out: &Path) -> Result<ReconstructionReport> {
    let plain = RunConfig {
        alpha: None,
        ..cfg.clone()
    };
    let report = reconstruct(&plain, &generate(&plain)?)?;
    save_report(out, &report)?;
    Ok(report)
}

pub fn cmd_epd_roundtrip(cfg: &RunConfig, out: &Path) -> Result<ReconstructionReport> {
    if cfg.alpha.is_none() {
        bail!("epd-roundtrip needs `alpha` in the config");
    }
    let report = reconstruct(cfg, &generate(cfg)?)?;
    save_report(out, &report)?;
    Ok(report)
}

/// Runs a verification suite, prints the table and reports whether every
/// check passed.
pub fn cmd_verify<W: Write>(suite: Suite, w: W) -> Result<(bool, Vec<Check>)> {
    let checks = verify::run(suite)?;
    verify::print_table(w, &checks)?;
    Ok((checks.iter().all(Check::passed), checks))
}

/// Renders the reconstructed values of a report as a PGM image.
pub fn cmd_render(report: &Path, out: &Path, slice: Option<Slice>) -> Result<()> {
    let r = load_report(report)?;
    let img = rasterize(&r.points, &r.reconstructed, slice)?;
    let f = File::create(out).with_context(|| format!("creating {}", out.display()))?;
    let mut w = BufWriter::new(f);
    write_pgm(&mut w, &img)?;
    w.flush()?;
    Ok(())
}
