use crate::convolve::{smooth, BoundaryMode};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kernel::{separable_kernel_for, RadiusRule};

/// Smoothed copies of `field`, one per bandwidth, fine to coarse.
pub fn scale_space(
    field: &Field,
    sigmas: &[f64],
    rule: RadiusRule,
    boundary: BoundaryMode,
) -> Result<Vec<Field>> {
    if sigmas.is_empty() || sigmas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::BadSigmaList);
    }
    sigmas
        .iter()
        .map(|&sigma| {
            let kernel = separable_kernel_for(sigma, rule, field.spacing())?;
            smooth(field, &kernel, boundary)
        })
        .collect()
}
