use gksmooth::{fwhm_to_sigma, separable_kernel_for, smooth, BoundaryMode, Field, RadiusRule, Result};

/// Isotropic Gaussian blur with the bandwidth given as a FWHM in the
/// field's spacing units, using the default radius rule.
pub fn gaussblur_fwhm(field: &Field, fwhm: f64, boundary: BoundaryMode) -> Result<Field> {
    gaussblur_fwhm_with(field, fwhm, RadiusRule::Auto, boundary)
}

pub fn gaussblur_fwhm_with(field: &Field, fwhm: f64, rule: RadiusRule, boundary: BoundaryMode) -> Result<Field> {
    if !(fwhm.is_finite() && fwhm > 0.0) {
        return Err(gksmooth::Error::InvalidFwhm(fwhm));
    }
    let sigma = fwhm_to_sigma(fwhm)?;
    let kernel = separable_kernel_for(sigma, rule, field.spacing())?;
    smooth(field, &kernel, boundary)
}
