//! Gaussian kernel smoothing of sampled n-D fields.
//!
//! - [`kernel`]: discrete Gaussian kernels, FWHM/bandwidth conversion
//! - [`convolve`]: separable 'same'-shaped convolution and a dense reference
//! - [`scale_space`]: families of smoothed copies indexed by bandwidth
//! - [`smoothness`]: effective-FWHM estimation from residual ensembles
//! - [`stats`]: empirical CDF, sample and analytic quantiles, QQ curves, KDE
//! - [`sim`]: seeded generators and the recovery / Gaussianness experiments
//!
//! With the default `parallel` feature, convolution lines, edge estimates,
//! KDE grid nodes and Monte Carlo repetitions are spread over rayon. Every
//! output sample is produced by one task with a fixed summation order, so
//! results are bitwise identical with or without the feature.

pub mod convolve;
pub mod error;
pub mod field;
pub mod kernel;
mod par;
pub mod scale_space;
pub mod sim;
pub mod smoothness;
pub mod stats;

pub use convolve::{
    convolve_axis, convolve_axis_with, convolve_dense, convolve_dense_with, smooth, smooth_at,
    smooth_with, BoundaryMode,
};
pub use error::{Error, Result};
pub use field::Field;
pub use kernel::{
    default_radius, fwhm_to_sigma, gaussian_kernel_1d, separable_kernel, separable_kernel_for,
    sigma_to_fwhm, Kernel1D, RadiusRule, SeparableKernel,
};
pub use par::Execution;
pub use scale_space::scale_space;
pub use smoothness::{
    edge_efwhm, field_efwhm, normalize_residuals, Edge, EdgeEstimate, EfwhmOptions, EfwhmSummary,
    ResidualEnsemble,
};
