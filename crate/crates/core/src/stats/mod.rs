//! Empirical distributions, analytic quantiles, QQ curves and kernel
//! density estimation.

mod dist;
mod kde;
mod qq;
mod sample;

pub use dist::{
    exponential_quantile, normal_cdf, normal_pdf, normal_quantile, Exponential, Normal,
    QuantileFunction,
};
pub use kde::{kde, kde_1d, GridAxis};
pub use qq::{normal_probability_plot, qq_curve, LineFit, QQCurve, QQPoint, MIDDLE_TRIM};
pub use sample::{empirical_cdf, sample_quantile, SampleSet};
