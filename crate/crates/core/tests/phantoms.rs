use approx::assert_abs_diff_eq;
use geomeans::phantoms::bump_profile;
use geomeans::{Bump, Phantom, ScalarField, SpacePoint, SpaceSpec};

#[test]
fn evaluation_examples() {
    let s = SpaceSpec::euclidean(2, 1.0).unwrap();
    let p = Phantom::single(s, &[0.1, 0.2], 0.4, 2.5).unwrap();
    assert_eq!(p.eval(&SpacePoint::new(vec![0.1, 0.2])), 2.5);
    assert_eq!(p.value(&[0.6, 0.2]), 0.0);
    assert_abs_diff_eq!(p.value(&[0.3, 0.2]), 2.5 * (-1.0f64 / 3.0).exp(), epsilon = 1e-14);
}

#[test]
fn curved_bumps_use_geodesic_distance() {
    let s = SpaceSpec::sphere(2, 1.2).unwrap();
    let p = Phantom::single(s, &[0.0, 0.0], 0.5, 1.0).unwrap();
    let r: f64 = 0.25;
    assert_abs_diff_eq!(p.value(&[r.sin(), 0.0, r.cos()]), bump_profile(0.25), epsilon = 1e-13);
    let h = SpaceSpec::hyperbolic(3, 1.0).unwrap();
    let p = Phantom::single(h, &[0.0, 0.0, 0.0], 0.5, 1.0).unwrap();
    assert_abs_diff_eq!(p.value(&[0.0, r.sinh(), 0.0, r.cosh()]), bump_profile(0.25), epsilon = 1e-13);
}

#[test]
fn support_margins() {
    let s = SpaceSpec::euclidean(2, 1.0).unwrap();
    assert_abs_diff_eq!(
        Phantom::single(s, &[0.0, 0.0], 0.4, 1.0).unwrap().support_margin().unwrap(),
        0.6,
        epsilon = 1e-15
    );
    assert!(Phantom::single(s, &[0.6, 0.0], 0.4, 1.0).is_err());
    assert!(Phantom::single(s, &[0.56, 0.0], 0.4, 1.0).is_err());
    let bump = |c: Vec<f64>, r: f64| Bump {
        center: SpacePoint::new(c),
        geodesic_radius: r,
        amplitude: 1.0,
    };
    let two = Phantom::new(s, vec![bump(vec![0.0, 0.0], 0.3), bump(vec![0.5, 0.0], 0.2)]).unwrap();
    assert_abs_diff_eq!(two.support_margin().unwrap(), 0.3, epsilon = 1e-15);
    assert!(Phantom::new(s, vec![]).is_err());
}
