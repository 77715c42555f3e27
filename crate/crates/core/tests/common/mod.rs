#![allow(dead_code)]

use geomeans::forward::{default_tgrid, forward_means, MeanData};
use geomeans::inversion::{chart_grid, Method, ReconstructionReport, Reconstructor};
use geomeans::spaces::boundary_grid;
use geomeans::{Phantom, SpaceKind, SpaceSpec, TGrid};

/// Off-centre bump used by the round-trip tests: chart centre (0.2, 0.1, 0,
/// ...) scaled by the chart radius, geodesic radius 0.4 R.
pub fn test_phantom(space: SpaceSpec) -> Phantom {
    let mut c = vec![0.0; space.n];
    c[0] = 0.2;
    c[1] = 0.1;
    Phantom::single(space, &c, 0.4 * space.radius, 1.0).unwrap()
}

pub fn chart_radius(space: &SpaceSpec) -> f64 {
    match space.kind {
        SpaceKind::Euclidean => space.radius,
        SpaceKind::Sphere => space.radius.sin(),
        SpaceKind::Hyperbolic => space.radius.sinh(),
    }
}

/// Boundary points per angle used at the default resolution.
pub fn default_boundary_points(n: usize) -> usize {
    match n {
        2 => 128,
        3 => 48,
        _ => 32,
    }
}

pub fn tgrid_with_len(space: &SpaceSpec, len: usize) -> TGrid {
    let g = default_tgrid(space);
    TGrid::new(g.start, g.end, len).unwrap()
}

pub fn means(phantom: &Phantom, m: usize, tgrid: TGrid, order: usize) -> MeanData {
    let b = boundary_grid(&phantom.space, m).unwrap();
    forward_means(phantom, &b, &tgrid, order).unwrap()
}

pub fn eval_points(space: &SpaceSpec) -> Vec<Vec<f64>> {
    chart_grid(space, 21, 0.8 * chart_radius(space)).unwrap()
}

pub fn report(data: &MeanData, phantom: &Phantom, method: Method) -> ReconstructionReport {
    let rec = Reconstructor::new(data, method).unwrap();
    ReconstructionReport::compute(&rec, phantom, eval_points(&data.space)).unwrap()
}

/// Relative L2 distance between two value vectors.
pub fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    (num / den).sqrt()
}
