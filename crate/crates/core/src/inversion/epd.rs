use super::reconstructor::{Method, Reconstructor};
use crate::error::{Error, Result};
use crate::forward::MeanData;
use crate::fractional::{ErdelyiKober, FractionalSpec, RiemannLiouville};
use crate::spaces::{SpaceKind, SpacePoint};
use crate::special::{gamma, unit_sphere_area};
use rayon::prelude::*;
use std::f64::consts::PI;

fn trace_alpha(traces: &MeanData, kind: SpaceKind) -> Result<f64> {
    traces.check()?;
    if traces.space.kind != kind {
        return Err(Error::WrongMethod(format!(
            "{} traces given to the {} EPD inversion",
            traces.space.kind.name(),
            kind.name()
        )));
    }
    traces
        .alpha
        .ok_or_else(|| Error::WrongMethod("data carry no EPD parameter".into()))
}

/// Plain means `φ_ξ = Γ(n/2)/Γ(α+n/2) I_{η+α}^{-α} u_ξ` from Euclidean EPD
/// traces, `η = n/2 - 1`.
pub fn recover_means_euclidean(traces: &MeanData) -> Result<MeanData> {
    let alpha = trace_alpha(traces, SpaceKind::Euclidean)?;
    let nf = traces.space.n as f64;
    if alpha < (1.0 - nf) / 2.0 {
        return Err(Error::InvalidParameter(format!("α = {alpha} below (1-n)/2")));
    }
    let s = alpha + nf / 2.0;
    if s <= 0.0 && s == s.round() {
        return Err(Error::Pole(format!("Γ(α + n/2) at α = {alpha}")));
    }
    let mut out = traces.clone();
    out.alpha = None;
    if alpha == 0.0 {
        return Ok(out);
    }
    let op = ErdelyiKober::new(traces.tgrid, FractionalSpec::new(nf / 2.0 - 1.0 + alpha, -alpha))?;
    let c = gamma(nf / 2.0) / gamma(s);
    out.values = traces
        .values
        .par_iter()
        .map(|row| Ok(op.apply(row)?.into_iter().map(|v| c * v).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

/// Plain means from spherical EPD traces: with
/// `G = 2^{1-α} π^{n/2} / (Γ(α+n/2) σ_{n-1}) (1-t²)^{α-1+n/2} g`,
/// `Mf = (1-t²)^{1-n/2} I₋^{-α} G`.
pub fn recover_means_sphere(traces: &MeanData) -> Result<MeanData> {
    let alpha = trace_alpha(traces, SpaceKind::Sphere)?;
    let nf = traces.space.n as f64;
    let s = alpha + nf / 2.0;
    if s <= 0.0 && s == s.round() {
        return Err(Error::Pole(format!("Γ(α + n/2) at α = {alpha}")));
    }
    let grid = traces.tgrid;
    let op = RiemannLiouville::new(grid, -alpha)?;
    let c = 2f64.powf(1.0 - alpha) * PI.powf(nf / 2.0) / (gamma(s) * unit_sphere_area(traces.space.n));
    let mut out = traces.clone();
    out.alpha = None;
    out.values = traces
        .values
        .par_iter()
        .map(|row| {
            let g: Vec<f64> = row
                .iter()
                .enumerate()
                .map(|(j, v)| c * (1.0 - grid.node(j).powi(2)).powf(alpha - 1.0 + nf / 2.0) * v)
                .collect();
            let m = op.apply(&g)?;
            Ok(m.iter()
                .enumerate()
                .map(|(j, v)| (1.0 - grid.node(j).powi(2)).powf(1.0 - nf / 2.0) * v)
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

/// Euclidean EPD inversion at one point.
pub fn epd_invert_euclidean(traces: &MeanData, x: &SpacePoint) -> Result<f64> {
    Reconstructor::new(&recover_means_euclidean(traces)?, Method::Direct)?.eval_point(x)
}

/// Spherical EPD inversion at one point. `alpha` must match the trace tag.
pub fn epd_invert_sphere(traces: &MeanData, alpha: f64, x: &SpacePoint) -> Result<f64> {
    if traces.alpha != Some(alpha) {
        return Err(Error::DataMismatch(format!(
            "traces carry α = {:?}, inversion asked for {alpha}",
            traces.alpha
        )));
    }
    Reconstructor::new(&recover_means_sphere(traces)?, Method::Direct)?.eval_point(x)
}
