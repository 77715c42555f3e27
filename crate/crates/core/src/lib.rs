//! Spherical mean Radon transform on Euclidean space, the round sphere and
//! hyperbolic space, together with its explicit inversion, the
//! Euler-Poisson-Darboux fractional variants and numerical checks of the
//! supporting special-function identities.
//!
//! The crate is organised bottom-up:
//!
//! * [`spaces`] models the three geometries, their boundary spheres and the
//!   spheres of integration.
//! * [`phantoms`] provides smooth compactly supported test functions.
//! * [`numerics`] holds the one-dimensional machinery (sampled profiles,
//!   derivatives, logarithmic product integration, finite differences).
//! * [`fractional`] implements Erdelyi-Kober and Riemann-Liouville operators.
//! * [`forward`] computes spherical means and fractional traces.
//! * [`inversion`] implements the back-projection inversion formulas.
//! * [`special`] evaluates the special functions and integrals the inversion
//!   formulas rest on.

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod forward;
pub mod fractional;
pub mod inversion;
pub mod numerics;
pub mod phantoms;
pub mod spaces;
pub mod special;

pub use error::{Error, Result};
pub use forward::{forward_means, MeanData};

pub use fractional::FractionalSpec;
pub use inversion::{InversionConstants, Method, ReconstructionReport, Reconstructor};

pub use numerics::{SampledProfile, TGrid};
pub use phantoms::{Bump, Phantom, ScalarField};
pub use spaces::{BoundaryGrid, SpaceKind, SpacePoint, SpaceSpec};
