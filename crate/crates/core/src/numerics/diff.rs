use super::grid::SampledProfile;
use crate::error::{Error, Result};

/// Fourth-order finite-difference first derivative of uniformly spaced
/// samples. Interior nodes use the centred five-point stencil, the two nodes
/// at each end one-sided five-point stencils.
pub fn first_derivative_samples(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    assert!(n >= 5, "need at least five samples");
    let c = 1.0 / (12.0 * h);
    let mut d = vec![0.0; n];
    d[0] = c * (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]);
    d[1] = c * (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]);
    for i in 2..n - 2 {
        d[i] = c * (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]);
    }
    d[n - 2] = -c * (-3.0 * v[n - 1] - 10.0 * v[n - 2] + 18.0 * v[n - 3] - 6.0 * v[n - 4] + v[n - 5]);
    d[n - 1] = -c
        * (-25.0 * v[n - 1] + 48.0 * v[n - 2] - 36.0 * v[n - 3] + 16.0 * v[n - 4] - 3.0 * v[n - 5]);
    d
}

/// `k`-th derivative by repeated application of the first-derivative stencil.
pub fn derivative(profile: &SampledProfile, k: usize) -> Result<SampledProfile> {
    if profile.samples.len() < k + 8 {
        return Err(Error::InvalidGrid(format!(
            "{} samples too few for a derivative of order {k}",
            profile.samples.len()
        )));
    }
    let h = profile.grid.step();
    let mut samples = profile.samples.clone();
    for _ in 0..k {
        samples = first_derivative_samples(&samples, h);
    }
    Ok(SampledProfile { grid: profile.grid, samples })
}

/// `m`-fold application of `D = (1/2t) d/dt`.
pub fn d_operator(profile: &SampledProfile, m: usize) -> Result<SampledProfile> {
    if profile.grid.start <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "D = (1/2t) d/dt needs a positive grid, starts at {}",
            profile.grid.start
        )));
    }
    let mut p = profile.clone();
    for _ in 0..m {
        let d = derivative(&p, 1)?;
        p = d.map(|t, v| v / (2.0 * t));
    }
    Ok(p)
}

/// Radial Laplacian `d^2/dt^2 + (n-1)/t d/dt`.
pub fn darboux_l(profile: &SampledProfile, n: usize) -> Result<SampledProfile> {
    if profile.grid.start <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "radial Laplacian needs a positive grid, starts at {}",
            profile.grid.start
        )));
    }
    let d1 = derivative(profile, 1)?;
    let d2 = derivative(profile, 2)?;
    let k = n as f64 - 1.0;
    let samples = (0..profile.grid.len)
        .map(|i| d2.samples[i] + k / profile.grid.node(i) * d1.samples[i])
        .collect();
    Ok(SampledProfile { grid: profile.grid, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::TGrid;

    #[test]
    fn exact_on_quartics() {
        let g = TGrid::new(-1.0, 1.5, 80).unwrap();
        let p = SampledProfile::from_fn(g, |t| t.powi(4) - 2.0 * t.powi(3) + t - 4.0);
        let d1 = derivative(&p, 1).unwrap();
        let d2 = derivative(&p, 2).unwrap();
        for i in 0..g.len {
            let t = g.node(i);
            assert!((d1.samples[i] - (4.0 * t.powi(3) - 6.0 * t * t + 1.0)).abs() < 1e-9);
            assert!((d2.samples[i] - (12.0 * t * t - 12.0 * t)).abs() < 1e-6);
        }
    }

    #[test]
    fn d_operator_on_even_power() {
        let g = TGrid::new(0.2, 2.0, 200).unwrap();
        let p = SampledProfile::from_fn(g, |t| t.powi(6));
        let d = d_operator(&p, 2).unwrap();
        for i in 4..g.len - 4 {
            let t = g.node(i);
            assert!((d.samples[i] - 6.0 * t * t).abs() < 1e-5 * (1.0 + 6.0 * t * t), "{t} {}", d.samples[i]);
        }
        let g0 = TGrid::new(0.0, 1.0, 64).unwrap();
        assert!(d_operator(&SampledProfile::from_fn(g0, |t| t), 1).is_err());
    }

    #[test]
    fn darboux_annihilates_fundamental_solution() {
        let g = TGrid::new(0.5, 2.0, 400).unwrap();
        let p = SampledProfile::from_fn(g, |t| 1.0 / t);
        let l = darboux_l(&p, 3).unwrap();
        for i in 4..g.len - 4 {
            assert!(l.samples[i].abs() < 1e-6, "{} {}", g.node(i), l.samples[i]);
        }
    }
}
