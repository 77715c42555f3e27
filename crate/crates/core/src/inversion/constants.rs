use crate::error::{Error, Result};
use crate::special::{gamma, unit_sphere_area};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Numerical constants of the inversion formulas for one dimension and
/// radius. Entries that are undefined for the given `n` or `alpha` are
/// `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InversionConstants {
    pub n: usize,
    pub radius: f64,
    pub alpha: Option<f64>,
    /// Area `σ_{n-1}` of the unit sphere in `R^n`.
    pub sigma: f64,
    /// `(-1)^{⌊n/2-1⌋} Γ((n-1)/2) / (n-3)!`, for `n ≥ 3`.
    pub delta_n: Option<f64>,
    /// `(2R)^{2-n} π^{-1/2} Γ(n/2)`.
    pub lambda_n: f64,
    /// Odd `n`: `(-1)^{(n-1)/2} π^{1-n/2} / (4R Γ(n/2))`.
    pub d_n1: Option<f64>,
    /// Even `n`: `(-1)^{n/2-1} π^{-n/2} / (2R (n/2-1)!)`.
    pub d_n2: Option<f64>,
    /// `d_{n,1}` with `Γ(α+n/2)` in place of `Γ(n/2)`.
    pub d_tilde_n1: Option<f64>,
    /// `d_{n,2}` with `Γ(α+n/2)` in place of `(n/2-1)!`.
    pub d_tilde_n2: Option<f64>,
    /// Curved-space constant `(-1)^{[n/2-1]} / (2^{n-1} π^{n/2-1} Γ(n/2))`.
    pub d_n: f64,
    /// `2^{α-1} π^{-n/2} Γ(α+n/2) / Γ(α)` for `α > 0`.
    pub c_n_alpha: Option<f64>,
}

fn sign(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Evaluates all constants for dimension `n`, radius `R` (or cap angle `θ`)
/// and an optional EPD parameter.
pub fn constants(n: usize, radius: f64, alpha: Option<f64>) -> Result<InversionConstants> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("dimension n = {n} below 2")));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!("radius {radius} must be positive")));
    }
    let nf = n as f64;
    let half = nf / 2.0;
    let odd = n % 2 == 1;
    let ga = match alpha {
        Some(a) => {
            let s = a + half;
            if s <= 0.0 && s == s.round() {
                return Err(Error::Pole(format!("Γ(α + n/2) at α = {a}")));
            }
            Some(gamma(s))
        }
        None => None,
    };
    let odd_num = sign((n as i64 - 1) / 2) * PI.powf(1.0 - half) / (4.0 * radius);
    let even_num = sign(n as i64 / 2 - 1) * PI.powf(-half) / (2.0 * radius);
    let delta_n = (n >= 3).then(|| sign(((n - 2) / 2) as i64) * gamma((nf - 1.0) / 2.0) / gamma(nf - 2.0));
    let c_n_alpha = match alpha {
        Some(a) if a > 0.0 => Some(2f64.powf(a - 1.0) * PI.powf(-half) * gamma(a + half) / gamma(a)),
        _ => None,
    };
    Ok(InversionConstants {
        n,
        radius,
        alpha,
        sigma: unit_sphere_area(n),
        delta_n,
        lambda_n: (2.0 * radius).powf(2.0 - nf) / PI.sqrt() * gamma(half),
        d_n1: odd.then(|| odd_num / gamma(half)),
        d_n2: (!odd).then(|| even_num / gamma(half)),
        d_tilde_n1: ga.filter(|_| odd).map(|g| odd_num / g),
        d_tilde_n2: ga.filter(|_| !odd).map(|g| even_num / g),
        d_n: sign(((n - 2) / 2) as i64) / (2f64.powi(n as i32 - 1) * PI.powf(half - 1.0) * gamma(half)),
        c_n_alpha,
    })
}
