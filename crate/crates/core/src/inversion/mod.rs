//! Back-projection inversion of the spherical mean transform.
//!
//! Every formula has the shape `f(x) = c(x) · Δ_{x'} Σ_i w_i P_i(a(ξ_i, x))`
//! where `P_i` is a one-dimensional profile derived from the data of centre
//! `ξ_i`, `a` is the data argument of the space and the Laplacian acts in
//! the chart. The modified Euclidean formulas drop the outer Laplacian.

mod constants;
mod epd;
mod potentials;
mod reconstructor;
mod report;

pub use constants::{constants, InversionConstants};
pub use epd::{
    epd_invert_euclidean, epd_invert_sphere, recover_means_euclidean, recover_means_sphere,
};
pub use potentials::{
    chart_log_potential, identity_sides, log_potential, riesz_potential, total_mass, IdentitySides,
};
pub use reconstructor::{
    backproject, invert_euclidean_even, invert_euclidean_modified, invert_euclidean_odd,
    invert_hyperbolic, invert_sphere, HyperbolicPrefactor, Method, Parity, Reconstructor,
};
pub use report::{chart_grid, ReconstructionReport};
