use approx::assert_abs_diff_eq;
use geomeans::spaces::{boundary_grid, h_parameter, minkowski_form, section_quadrature};
use geomeans::{Error, SpaceKind, SpacePoint, SpaceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

#[test]
fn spec_validation() {
    assert!(SpaceSpec::euclidean(1, 1.0).is_err());
    assert!(SpaceSpec::euclidean(2, 0.0).is_err());
    assert!(SpaceSpec::sphere(2, PI / 2.0).is_ok());
    assert!(SpaceSpec::sphere(2, 1.6).is_err());
    assert!(SpaceSpec::hyperbolic(3, 2.0).is_ok());
}

#[test]
fn manifold_checks() {
    let s = SpaceSpec::sphere(2, 1.0).unwrap();
    assert!(s.point(vec![0.0, 0.6, 0.8]).is_ok());
    assert!(matches!(s.point(vec![0.0, 0.6, 0.81]), Err(Error::NotOnManifold { .. })));
    let h = SpaceSpec::hyperbolic(2, 1.0).unwrap();
    let r: f64 = 0.7;
    assert!(h.point(vec![r.sinh(), 0.0, r.cosh()]).is_ok());
    assert!(h.point(vec![r.sinh(), 0.0, -r.cosh()]).is_err());
    assert!(matches!(h.point(vec![0.0, 1.0]), Err(Error::Dimension { expected: 3, got: 2 })));
}

#[test]
fn boundary_grid_small_cases() {
    let e = SpaceSpec::euclidean(2, 1.0).unwrap();
    let b = boundary_grid(&e, 4).unwrap();
    let want = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
    for (c, w) in b.centers.iter().zip(&want) {
        assert_abs_diff_eq!(c.coords[0], w[0], epsilon = 1e-15);
        assert_abs_diff_eq!(c.coords[1], w[1], epsilon = 1e-15);
    }
    assert!(b.weights.iter().all(|w| (w - 0.25).abs() < 1e-15));

    let s = SpaceSpec::sphere(2, PI / 2.0).unwrap();
    let b = boundary_grid(&s, 4).unwrap();
    for c in &b.centers {
        assert_abs_diff_eq!(c.coords[2], 0.0, epsilon = 1e-15);
        s.check(&c.coords).unwrap();
    }
}

#[test]
fn boundary_weights_normalized() {
    for kind in [SpaceKind::Euclidean, SpaceKind::Sphere, SpaceKind::Hyperbolic] {
        for n in 2..=4 {
            let space = SpaceSpec::new(kind, n, 0.9).unwrap();
            let b = boundary_grid(&space, 10).unwrap();
            assert_abs_diff_eq!(b.weights.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
            for c in &b.centers {
                space.check(&c.coords).unwrap();
                assert_abs_diff_eq!(space.distance_from_origin(&c.coords), 0.9, epsilon = 1e-12);
            }
        }
    }
}

#[test]
fn minkowski_form_values() {
    let e = SpacePoint::new(vec![0.0, 0.0, 1.0]);
    assert_abs_diff_eq!(minkowski_form(&e, &e).unwrap(), 1.0, epsilon = 1e-15);
    let r: f64 = 1.3;
    let x = SpacePoint::new(vec![r.sinh(), r.cosh()]);
    let y = SpacePoint::new(vec![0.0, 1.0]);
    assert_abs_diff_eq!(minkowski_form(&x, &y).unwrap(), r.cosh(), epsilon = 1e-14);

    // Random pairs: the form equals cosh of the distance along the geodesic,
    // measured by integrating the Minkowski speed of the connecting curve.
    let space = SpaceSpec::hyperbolic(3, 1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let a: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let b: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let p = space.lift(&a).unwrap();
        let q = space.lift(&b).unwrap();
        let form = minkowski_form(&p, &q).unwrap();
        let d = form.acosh();
        // Geodesic from p to q: cosh(s) p + sinh(s) v, v the unit tangent.
        let v: Vec<f64> = p.coords.iter().zip(&q.coords).map(|(pi, qi)| (qi - form * pi) / d.sinh()).collect();
        let steps = 2000;
        let mut length = 0.0;
        let mut prev = p.coords.clone();
        for k in 1..=steps {
            let s = d * k as f64 / steps as f64;
            let cur: Vec<f64> = p.coords.iter().zip(&v).map(|(pi, vi)| s.cosh() * pi + s.sinh() * vi).collect();
            let dl: Vec<f64> = cur.iter().zip(&prev).map(|(c, o)| c - o).collect();
            length += (dl[..3].iter().map(|x| x * x).sum::<f64>() - dl[3] * dl[3]).sqrt();
            prev = cur;
        }
        assert_abs_diff_eq!(length, d, epsilon = 1e-6);
        assert_abs_diff_eq!(prev[3], q.coords[3], epsilon = 1e-10);
        assert_abs_diff_eq!(space.distance(&p.coords, &q.coords), d, epsilon = 1e-10);
    }
}

#[test]
fn section_means_of_constants_and_linear_fields() {
    let cases = [
        (SpaceSpec::euclidean(3, 1.0).unwrap(), vec![0.0, 0.6, 0.8], 0.7),
        (SpaceSpec::sphere(3, 1.0).unwrap(), vec![0.5, 0.5, 0.5, 0.5], 0.3),
        (SpaceSpec::hyperbolic(2, 1.0).unwrap(), vec![1.0f64.sinh(), 0.0, 1.0f64.cosh()], 1.8),
    ];
    for (space, c, t) in cases {
        let q = section_quadrature(&space, &SpacePoint::new(c.clone()), t, 12).unwrap();
        assert!(q.weights.iter().all(|w| *w > 0.0));
        assert_abs_diff_eq!(q.weights.iter().sum::<f64>(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(q.integrate(|_| 1.0), 1.0, epsilon = 1e-10);
        for p in &q.points {
            space.check(p).unwrap();
            assert_abs_diff_eq!(space.data_argument(&c, p), t, epsilon = 1e-10);
        }
        if space.kind == SpaceKind::Euclidean {
            assert_abs_diff_eq!(q.integrate(|y| y[0]), c[0], epsilon = 1e-12);
        }
    }
}

#[test]
fn h_parameter_examples() {
    let e = SpaceSpec::euclidean(3, 1.0).unwrap();
    let x = SpacePoint::new(vec![0.3, 0.4, 0.0]);
    let y = SpacePoint::new(vec![0.0; 3]);
    assert_abs_diff_eq!(h_parameter(&e, &x, &y).unwrap(), 0.25, epsilon = 1e-15);
    assert_eq!(h_parameter(&e, &x, &x), Err(Error::DegeneratePair));
    for space in [SpaceSpec::sphere(2, 1.0).unwrap(), SpaceSpec::hyperbolic(2, 1.0).unwrap()] {
        let a = space.lift(&[0.3, 0.1]).unwrap();
        let b = space.lift(&[-0.3, -0.1]).unwrap();
        assert_abs_diff_eq!(h_parameter(&space, &a, &b).unwrap(), 0.0, epsilon = 1e-15);
    }
}

#[test]
fn lift_and_chart_round_trip() {
    let s = SpaceSpec::sphere(2, 1.0).unwrap();
    let p = s.lift(&[0.3, -0.2]).unwrap();
    assert_eq!(s.chart(&p), &[0.3, -0.2]);
    assert!(matches!(s.lift(&[0.8, 0.7]), Err(Error::StencilOutsideDomain(_))));
    let h = SpaceSpec::hyperbolic(2, 1.0).unwrap();
    let p = h.lift(&[3.0, 4.0]).unwrap();
    assert_abs_diff_eq!(p.coords[2], 26f64.sqrt(), epsilon = 1e-14);
}
