mod common;

use approx::assert_relative_eq;
use geomeans::forward::{epd_from_means_euclidean, epd_from_means_sphere};
use geomeans::inversion::{
    backproject, chart_grid, constants, epd_invert_euclidean, epd_invert_sphere, invert_euclidean_even,
    invert_euclidean_modified, invert_euclidean_odd, invert_hyperbolic, invert_sphere, riesz_potential,
    HyperbolicPrefactor, Method, Parity, ReconstructionReport, Reconstructor,
};
use geomeans::numerics::SampledProfile;
use geomeans::{BoundaryGrid, Bump, Error, MeanData, Phantom, SpaceSpec};
use std::f64::consts::PI;

fn zeroed(data: &MeanData) -> MeanData {
    let mut z = data.clone();
    z.values.iter_mut().flatten().for_each(|v| *v = 0.0);
    z
}

fn small_means(space: SpaceSpec) -> MeanData {
    let phantom = common::test_phantom(space);
    common::means(&phantom, 16, common::tgrid_with_len(&space, 200), 24)
}

#[test]
fn constant_spot_values() {
    let r = 1.3;
    let c3 = constants(3, r, None).unwrap();
    assert_relative_eq!(c3.d_n1.unwrap(), -1.0 / (2.0 * PI * r), max_relative = 1e-14);
    assert_relative_eq!(c3.delta_n.unwrap(), 1.0, max_relative = 1e-14);
    assert!(c3.d_n2.is_none());
    let c2 = constants(2, r, None).unwrap();
    assert_relative_eq!(c2.d_n2.unwrap(), 1.0 / (2.0 * PI * r), max_relative = 1e-14);
    assert!(c2.delta_n.is_none());
    assert_relative_eq!(c2.sigma, 2.0 * PI, max_relative = 1e-14);
    assert!(constants(1, r, None).is_err());
    assert!(constants(3, -1.0, None).is_err());
    assert!(constants(4, r, Some(-2.0)).is_err());
}

#[test]
fn backprojection_examples() {
    let space = SpaceSpec::euclidean(3, 1.5).unwrap();
    let data = small_means(space);
    let one: Vec<SampledProfile> = (0..data.boundary.len())
        .map(|_| SampledProfile::from_fn(data.tgrid, |_| 1.0))
        .collect();
    let x = space.point(vec![0.3, -0.2, 0.1]).unwrap();
    assert_relative_eq!(backproject(&data.boundary, &one, &x).unwrap(), 1.0, max_relative = 1e-12);
    let sq: Vec<SampledProfile> = (0..data.boundary.len())
        .map(|_| SampledProfile::from_fn(data.tgrid, |t| t * t))
        .collect();
    let v = backproject(&data.boundary, &sq, &space.origin()).unwrap();
    assert_relative_eq!(v, 2.25, max_relative = 1e-9);

    let single = BoundaryGrid {
        space,
        centers: vec![data.boundary.centers[3].clone()],
        weights: vec![1.0],
    };
    let lin = vec![SampledProfile::from_fn(data.tgrid, |t| 2.0 * t + 1.0)];
    let d = space.distance(&x.coords, &single.centers[0].coords);
    assert_relative_eq!(backproject(&single, &lin, &x).unwrap(), 2.0 * d + 1.0, max_relative = 1e-12);
}

#[test]
fn zero_data_gives_zero() {
    let x2 = vec![0.1, 0.2];
    for space in [
        SpaceSpec::euclidean(2, 1.0).unwrap(),
        SpaceSpec::euclidean(3, 1.0).unwrap(),
        SpaceSpec::sphere(2, 1.0).unwrap(),
        SpaceSpec::hyperbolic(2, 1.0).unwrap(),
    ] {
        let z = zeroed(&small_means(space));
        let mut chart = x2.clone();
        chart.resize(space.n, 0.0);
        let x = space.lift(&chart).unwrap();
        let v = match (space.kind, space.n) {
            (geomeans::SpaceKind::Euclidean, 2) => {
                invert_euclidean_even(&z, &x).unwrap() + invert_euclidean_modified(&z, &x, Parity::Even).unwrap()
            }
            (geomeans::SpaceKind::Euclidean, _) => {
                invert_euclidean_odd(&z, &x).unwrap() + invert_euclidean_modified(&z, &x, Parity::Odd).unwrap()
            }
            (geomeans::SpaceKind::Sphere, _) => invert_sphere(&z, &x).unwrap(),
            (geomeans::SpaceKind::Hyperbolic, _) => invert_hyperbolic(&z, &x).unwrap(),
        };
        assert_eq!(v, 0.0);
    }
}

#[test]
fn wrong_formula_is_rejected() {
    let e2 = small_means(SpaceSpec::euclidean(2, 1.0).unwrap());
    let e3 = small_means(SpaceSpec::euclidean(3, 1.0).unwrap());
    let s2 = small_means(SpaceSpec::sphere(2, 1.0).unwrap());
    let o2 = e2.space.origin();
    let o3 = e3.space.origin();
    assert!(matches!(invert_euclidean_odd(&e2, &o2), Err(Error::WrongMethod(_))));
    assert!(matches!(invert_euclidean_even(&e3, &o3), Err(Error::WrongMethod(_))));
    assert!(matches!(invert_euclidean_modified(&e3, &o3, Parity::Even), Err(Error::WrongMethod(_))));
    assert!(matches!(invert_hyperbolic(&s2, &s2.space.origin()), Err(Error::WrongMethod(_))));
    assert!(matches!(Reconstructor::new(&s2, Method::Modified), Err(Error::WrongMethod(_))));
    let traces = epd_from_means_euclidean(&e3, 1.0).unwrap();
    assert!(Reconstructor::new(&traces, Method::Direct).is_err());
    assert!(riesz_potential(&common::test_phantom(e2.space), &o2).is_err());
}

#[test]
fn evaluation_outside_the_ball_fails() {
    let space = SpaceSpec::euclidean(2, 1.0).unwrap();
    let rec = Reconstructor::new(&small_means(space), Method::Direct).unwrap();
    assert!(rec.eval(&[1.0, 0.0]).is_err());
    assert!(rec.eval(&[0.7, 0.8]).is_err());
    assert!(Reconstructor::new(&small_means(space), Method::Direct).unwrap().with_fd_step(0.0).is_err());
}

#[test]
fn inversion_is_linear() {
    let space = SpaceSpec::euclidean(3, 1.0).unwrap();
    let a = Phantom::single(space, &[0.2, 0.1, 0.0], 0.3, 1.0).unwrap();
    let b = Phantom::single(space, &[-0.3, 0.0, 0.2], 0.25, -0.7).unwrap();
    let both = Phantom::new(space, a.bumps.iter().chain(&b.bumps).cloned().collect::<Vec<Bump>>()).unwrap();
    let g = common::tgrid_with_len(&space, 200);
    let pts = chart_grid(&space, 5, 0.6).unwrap();
    for method in [Method::Direct, Method::Modified] {
        let rec = |p: &Phantom| {
            Reconstructor::new(&common::means(p, 12, g, 24), method)
                .unwrap()
                .reconstruct(&pts)
                .unwrap()
        };
        let (ra, rb, rab) = (rec(&a), rec(&b), rec(&both));
        for k in 0..pts.len() {
            assert!((rab[k] - ra[k] - rb[k]).abs() < 1e-8, "{method:?} {k}");
        }
    }
}

#[test]
fn hyperbolic_prefactors() {
    let space = SpaceSpec::hyperbolic(2, 1.0).unwrap();
    let data = small_means(space);
    let o = space.origin();
    let rec = Reconstructor::new(&data, Method::Direct).unwrap();
    let printed = rec.clone().with_hyperbolic_prefactor(HyperbolicPrefactor::Printed);
    assert_relative_eq!(rec.prefactor(&o) * 1f64.sinh(), 1.0, max_relative = 1e-15);
    assert_relative_eq!(printed.prefactor(&o) * 1f64.sinh(), 1.0, max_relative = 1e-15);
    let p = space.lift(&[0.5, 0.3]).unwrap();
    assert!(printed.prefactor(&p) < rec.prefactor(&p));
}

#[test]
fn printed_hyperbolic_prefactor_loses_calibration() {
    let space = SpaceSpec::hyperbolic(2, 1.0).unwrap();
    let phantom = common::test_phantom(space);
    let data = common::means(&phantom, 64, geomeans::forward::default_tgrid(&space), 48);
    let pts = common::eval_points(&space);
    let rec = Reconstructor::new(&data, Method::Direct).unwrap();
    let good = ReconstructionReport::compute(&rec, &phantom, pts.clone()).unwrap();
    let printed = rec.with_hyperbolic_prefactor(HyperbolicPrefactor::Printed);
    let bad = ReconstructionReport::compute(&printed, &phantom, pts).unwrap();
    assert!((good.calibration - 1.0).abs() < 0.01, "{}", good.calibration);
    assert!((bad.calibration - 0.93).abs() < 0.02, "{}", bad.calibration);
}

#[test]
fn zero_order_traces_invert_like_means() {
    let space = SpaceSpec::euclidean(3, 1.0).unwrap();
    let data = small_means(space);
    let traces = epd_from_means_euclidean(&data, 0.0).unwrap();
    let x = space.point(vec![0.2, 0.0, 0.1]).unwrap();
    assert_eq!(epd_invert_euclidean(&traces, &x).unwrap(), invert_euclidean_odd(&data, &x).unwrap());

    let sphere = SpaceSpec::sphere(2, 1.0).unwrap();
    let data = small_means(sphere);
    let x = sphere.lift(&[0.1, 0.2]).unwrap();
    let plain = invert_sphere(&data, &x).unwrap();
    let traces = epd_from_means_sphere(&data, 1e-3).unwrap();
    let near = epd_invert_sphere(&traces, 1e-3, &x).unwrap();
    assert!((near - plain).abs() < 2e-2 * plain.abs().max(1.0), "{near} vs {plain}");
    assert!(epd_invert_sphere(&traces, 0.5, &x).is_err());
}

#[test]
fn report_bookkeeping() {
    let space = SpaceSpec::euclidean(2, 1.0).unwrap();
    let pts = chart_grid(&space, 5, 0.5).unwrap();
    assert_eq!(pts.len(), 13);
    assert!(chart_grid(&space, 1, 0.5).is_err());
    let r = ReconstructionReport::from_values(space, Method::Direct, pts.clone(), vec![2.0; 13], vec![1.0; 13], 0.0)
        .unwrap();
    assert_relative_eq!(r.calibration, 2.0);
    assert_relative_eq!(r.rel_l2, 1.0);
    assert_relative_eq!(r.sup_error, 1.0);
    assert!(ReconstructionReport::from_values(space, Method::Direct, pts, vec![0.0; 3], vec![1.0; 13], 0.0).is_err());
}
