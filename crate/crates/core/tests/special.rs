use approx::assert_relative_eq;
use geomeans::special::{
    c_m1, chebyshev_pv, chebyshev_u, g_alpha_continued, g_alpha_direct, gamma, gauss_2f1, log_circle_integral,
    log_circle_integral_with, regularized_power_integral, Gaussian, DEFAULT_TOL,
};
use geomeans::Error;
use std::f64::consts::PI;

#[test]
fn hypergeometric_examples() {
    assert_eq!(gauss_2f1(0.7, -0.3, 2.5, 0.0, DEFAULT_TOL).unwrap(), 1.0);
    assert_relative_eq!(gauss_2f1(1.0, 1.0, 2.0, 0.5, DEFAULT_TOL).unwrap(), 2.0 * 2f64.ln(), max_relative = 1e-14);
    assert_relative_eq!(gauss_2f1(1.0, 0.0, 1.7, 0.9, DEFAULT_TOL).unwrap(), 1.0);
    assert!(matches!(gauss_2f1(1.0, 1.0, -2.0, 0.5, DEFAULT_TOL), Err(Error::Pole(_))));
}

#[test]
fn kernel_integral_examples() {
    for h in [-0.7, 0.0, 0.4] {
        assert_relative_eq!(g_alpha_direct(3, 1.0, h).unwrap(), 2.0 / PI.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(g_alpha_continued(3, 1.0, h).unwrap(), 2.0 / PI.sqrt(), max_relative = 1e-10);
    }
    assert!(g_alpha_direct(2, 1.0, 0.0).is_err());
    assert!(g_alpha_direct(3, -0.5, 0.0).is_err());
    assert!(g_alpha_direct(3, 1.0, 1.0).is_err());
}

#[test]
fn kernel_integral_is_even() {
    for n in 3..=6 {
        for alpha in [-2.5, -0.5, 0.3, 1.0, 1.7, 3.0 - n as f64] {
            for h in [0.2, 0.55, 0.85] {
                let a = g_alpha_continued(n, alpha, h).unwrap();
                let b = g_alpha_continued(n, alpha, -h).unwrap();
                assert!((a - b).abs() < 1e-10 * a.abs().max(1.0), "n={n} α={alpha} h={h}: {a} {b}");
            }
        }
    }
}

#[test]
fn removable_limit_is_constant() {
    for n in 3..=6 {
        let want = gamma((n as f64 - 1.0) / 2.0);
        let vals: Vec<f64> = [-0.8, 0.0, 0.8]
            .iter()
            .map(|&h| g_alpha_continued(n, 3.0 - n as f64, h).unwrap())
            .collect();
        let spread = vals.iter().cloned().fold(f64::MIN, f64::max) - vals.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1e-6, "n={n}");
        assert_relative_eq!(vals[1], want, max_relative = 1e-6);
    }
}

#[test]
fn regularized_gaussian_integral() {
    for k in 0..20 {
        let alpha = -5.0 + 7.0 * (k as f64 + 0.5) / 20.0;
        let v = regularized_power_integral(&Gaussian, alpha, None).unwrap();
        assert!((v - 1.0).abs() < 1e-6, "α = {alpha}: {v}");
    }
    // At α = -2: c_{1,1} φ''(0) with φ''(0) = -2.
    assert_relative_eq!(c_m1(1) * -2.0, 1.0);
    let at = regularized_power_integral(&Gaussian, -2.0, None).unwrap();
    assert!((at - 1.0).abs() < 1e-6);
}

#[test]
fn log_circle_examples() {
    let want = -2.0 * PI * 2f64.ln();
    for h in [-0.9, 0.0, 0.9] {
        assert!((log_circle_integral(h).unwrap() - want).abs() < 1e-10, "{h}");
    }
    let a = log_circle_integral_with(0.37, 12).unwrap();
    let b = log_circle_integral_with(0.37, 24).unwrap();
    assert!((a - b).abs() < 1e-10);
    assert!(log_circle_integral(1.0).is_err());
}

#[test]
fn chebyshev_examples() {
    assert_eq!(chebyshev_u(1, 0.0), 0.0);
    assert_relative_eq!(chebyshev_u(4, 0.3), 16.0 * 0.3f64.powi(4) - 12.0 * 0.09 + 1.0, max_relative = 1e-14);
    for h in [-0.5, 0.1, 0.7] {
        assert!((chebyshev_pv(1, h).unwrap() - PI).abs() < 1e-6, "{h}");
    }
    assert!(chebyshev_pv(2, 0.0).unwrap().abs() < 1e-6);
    assert!((chebyshev_pv(5, 0.3).unwrap() - PI * chebyshev_u(4, 0.3)).abs() < 1e-6);
}
