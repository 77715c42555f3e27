//! Smooth compactly supported test functions.

use crate::error::{Error, Result};
use crate::spaces::{SpacePoint, SpaceSpec};
use serde::{Deserialize, Serialize};

/// Required clearance between a bump and the boundary, as a fraction of the
/// space radius.
pub const MIN_MARGIN_FRACTION: f64 = 0.05;

/// `w(s) = exp(1 - 1/(1 - s²))` for `s < 1`, zero otherwise.
pub fn bump_profile(s2: f64) -> f64 {
    if s2 >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s2)).exp()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub center: SpacePoint,
    pub geodesic_radius: f64,
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Phantom {
    pub space: SpaceSpec,
    pub bumps: Vec<Bump>,
}

/// A scalar function on a space, evaluated at ambient coordinates.
pub trait ScalarField: Sync {
    fn value(&self, p: &[f64]) -> f64;

    /// Bump decomposition, when the field is a [`Phantom`].
    fn as_phantom(&self) -> Option<&Phantom> {
        None
    }
}

/// Wraps a closure as a [`ScalarField`].
pub struct FnField<F>(pub F);

impl<F: Fn(&[f64]) -> f64 + Sync> ScalarField for FnField<F> {
    fn value(&self, p: &[f64]) -> f64 {
        (self.0)(p)
    }
}

impl Phantom {
    pub fn new(space: SpaceSpec, bumps: Vec<Bump>) -> Result<Self> {
        if bumps.is_empty() {
            return Err(Error::InvalidPhantom("no bumps".into()));
        }
        for b in &bumps {
            space
                .check(&b.center.coords)
                .map_err(|e| Error::InvalidPhantom(e.to_string()))?;
            if !(b.geodesic_radius > 0.0) {
                return Err(Error::InvalidPhantom(format!(
                    "bump radius {} must be positive",
                    b.geodesic_radius
                )));
            }
        }
        let p = Self { space, bumps };
        let margin = p.support_margin()?;
        let need = MIN_MARGIN_FRACTION * space.radius;
        if margin < need - 1e-12 {
            return Err(Error::InvalidPhantom(format!(
                "support margin {margin} below the required {need}"
            )));
        }
        Ok(p)
    }

    /// Single bump centred at chart coordinates `chart`.
    pub fn single(space: SpaceSpec, chart: &[f64], geodesic_radius: f64, amplitude: f64) -> Result<Self> {
        let center = space.lift(chart)?;
        Self::new(
            space,
            vec![Bump {
                center,
                geodesic_radius,
                amplitude,
            }],
        )
    }

    pub fn eval(&self, p: &SpacePoint) -> f64 {
        self.value(&p.coords)
    }

    /// Smallest distance between a bump support and the boundary of the
    /// ball.
    pub fn support_margin(&self) -> Result<f64> {
        let margin = self
            .bumps
            .iter()
            .map(|b| self.space.radius - self.space.distance_from_origin(&b.center.coords) - b.geodesic_radius)
            .fold(f64::INFINITY, f64::min);
        if margin > 0.0 {
            Ok(margin)
        } else {
            Err(Error::InvalidPhantom(format!("support margin {margin} is not positive")))
        }
    }
}

impl ScalarField for Phantom {
    fn value(&self, p: &[f64]) -> f64 {
        self.bumps
            .iter()
            .map(|b| {
                let d = self.space.distance(p, &b.center.coords);
                let s = d / b.geodesic_radius;
                b.amplitude * bump_profile(s * s)
            })
            .sum()
    }

    fn as_phantom(&self) -> Option<&Phantom> {
        Some(self)
    }
}
