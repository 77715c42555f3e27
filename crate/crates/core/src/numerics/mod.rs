//! One-dimensional numerical building blocks shared by the forward and
//! inverse transforms.

mod diff;
mod grid;
mod laplacian;
mod logkernel;
pub(crate) mod panels;
mod quadrature;

pub use diff::{darboux_l, derivative, d_operator, first_derivative_samples};
pub use grid::{CubicBasis, SampledProfile, TGrid};
pub use laplacian::laplacian_fd;
pub use logkernel::{log_kernel_integral, LogKernel, LogKernelMatrix};
pub use quadrature::{gauss_legendre, integrate_graded, GaussRule};
