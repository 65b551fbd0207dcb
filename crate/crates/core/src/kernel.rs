//! Discrete Gaussian kernels and bandwidth conversions.
//!
//! Weights are sampled from `exp(-(k h)^2 / (2 sigma^2))` on the integer
//! offsets `k = -radius..=radius` (grid step `h`) and renormalized so the
//! truncated kernel sums to one. Renormalization keeps constant fields
//! constant under smoothing.

use crate::error::{Error, Result};

/// `2 sqrt(2 ln 2)`: the FWHM of a unit-sigma Gaussian.
pub const FWHM_PER_SIGMA: f64 = 2.354_820_045_030_949_3;

/// Kernel mass outside `DEFAULT_TRUNCATION * sigma` is below 1e-4.
pub const DEFAULT_TRUNCATION: f64 = 4.0;

pub fn sigma_to_fwhm(sigma: f64) -> Result<f64> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::InvalidSigma(sigma));
    }
    Ok(sigma * FWHM_PER_SIGMA)
}

pub fn fwhm_to_sigma(fwhm: f64) -> Result<f64> {
    if !(fwhm.is_finite() && fwhm >= 0.0) {
        return Err(Error::InvalidFwhm(fwhm));
    }
    Ok(fwhm / FWHM_PER_SIGMA)
}

/// `ceil(4 sigma / spacing)`, never less than one sample.
pub fn default_radius(sigma: f64, spacing: f64) -> usize {
    ((DEFAULT_TRUNCATION * sigma / spacing).ceil() as usize).max(1)
}

/// How the truncation radius of each axis kernel is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RadiusRule {
    /// `ceil(4 sigma / spacing)` per axis.
    #[default]
    Auto,
    /// The same radius (in grid steps) on every axis.
    Fixed(usize),
}

impl RadiusRule {
    pub fn radius(self, sigma: f64, spacing: f64) -> usize {
        match self {
            RadiusRule::Auto => default_radius(sigma, spacing),
            RadiusRule::Fixed(r) => r,
        }
    }
}

/// Normalized, symmetric 1-D Gaussian weights of length `2 * radius + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel1D {
    sigma: f64,
    radius: usize,
    weights: Vec<f64>,
}

impl Kernel1D {
    /// Wraps arbitrary weights. Used for identity and test kernels; the
    /// caller is responsible for their normalization.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.len() % 2 == 0 || weights.len() < 3 {
            return Err(Error::InvalidParameter(format!(
                "kernel length must be odd and >= 3, got {}",
                weights.len()
            )));
        }
        if let Some(index) = weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            sigma: f64::NAN,
            radius: weights.len() / 2,
            weights,
        })
    }

    /// Bandwidth the kernel was sampled from; NaN for [`Kernel1D::from_weights`].
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn center(&self) -> f64 {
        self.weights[self.radius]
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.weights.iter().map(|w| w * w).sum()
    }
}

pub fn gaussian_kernel_1d(sigma: f64, radius: usize, spacing: f64) -> Result<Kernel1D> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidSigma(sigma));
    }
    if radius < 1 {
        return Err(Error::InvalidRadius);
    }
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::InvalidSpacing {
            axis: 0,
            value: spacing,
        });
    }

    // Half-kernel, then mirror, so symmetry is exact.
    let half: Vec<f64> = (0..=radius)
        .map(|k| {
            let t = k as f64 * spacing;
            (-(t * t) / (2.0 * sigma * sigma)).exp()
        })
        .collect();
    // Sum smallest terms first.
    let total = half[0] + 2.0 * half[1..].iter().rev().sum::<f64>();

    let mut weights = vec![0.0; 2 * radius + 1];
    for (k, &h) in half.iter().enumerate() {
        let w = h / total;
        weights[radius + k] = w;
        weights[radius - k] = w;
    }
    Ok(Kernel1D {
        sigma,
        radius,
        weights,
    })
}

/// One normalized [`Kernel1D`] per field axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparableKernel {
    axes: Vec<Kernel1D>,
}

impl SeparableKernel {
    pub fn from_axes(axes: Vec<Kernel1D>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::EmptyDims);
        }
        Ok(Self { axes })
    }

    pub fn axes(&self) -> &[Kernel1D] {
        &self.axes
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    /// Extent of the materialized n-D kernel, `2 r_a + 1` per axis.
    pub fn dense_dims(&self) -> Vec<usize> {
        self.axes.iter().map(Kernel1D::len).collect()
    }

    /// The outer product of the axis weights, row-major.
    pub fn dense(&self) -> Vec<f64> {
        let mut dense = vec![1.0];
        for axis in &self.axes {
            dense = dense
                .iter()
                .flat_map(|&d| axis.weights.iter().map(move |&w| d * w))
                .collect();
        }
        dense
    }

    /// `sum(w^2)` of the dense kernel; the variance reduction factor for
    /// iid noise at interior samples.
    pub fn dense_sum_of_squares(&self) -> f64 {
        self.axes.iter().map(Kernel1D::sum_of_squares).product()
    }
}

pub fn separable_kernel(
    sigma: f64,
    radius: usize,
    rank: usize,
    spacing: &[f64],
) -> Result<SeparableKernel> {
    if rank < 1 {
        return Err(Error::EmptyDims);
    }
    if spacing.len() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: spacing.len(),
        });
    }
    let axes = spacing
        .iter()
        .map(|&h| gaussian_kernel_1d(sigma, radius, h))
        .collect::<Result<Vec<_>>>()?;
    SeparableKernel::from_axes(axes)
}

/// Kernel for `field_spacing`, with each axis radius chosen by `rule`.
pub fn separable_kernel_for(
    sigma: f64,
    rule: RadiusRule,
    spacing: &[f64],
) -> Result<SeparableKernel> {
    let axes = spacing
        .iter()
        .map(|&h| gaussian_kernel_1d(sigma, rule.radius(sigma, h), h))
        .collect::<Result<Vec<_>>>()?;
    SeparableKernel::from_axes(axes)
}
