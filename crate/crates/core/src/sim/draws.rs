use crate::error::{Error, Result};
use crate::field::Field;
use crate::sim::rng::Rng;
use crate::stats::{exponential_quantile, SampleSet};

fn check_count(count: usize) -> Result<()> {
    if count == 0 {
        return Err(Error::InvalidParameter("draw count must be at least 1".into()));
    }
    Ok(())
}

/// `count` iid `N(mean, sd^2)` draws.
pub fn normal_draws(rng: &mut Rng, mean: f64, sd: f64, count: usize) -> Result<SampleSet> {
    if !(sd.is_finite() && sd > 0.0) {
        return Err(Error::InvalidSigma(sd));
    }
    check_count(count)?;
    SampleSet::new((0..count).map(|_| rng.normal(mean, sd)).collect())
}

/// `count` iid exponential draws by inverse transform, `-ln(1 - U) / rate`.
pub fn exponential_draws(rng: &mut Rng, rate: f64, count: usize) -> Result<SampleSet> {
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::InvalidRate(rate));
    }
    check_count(count)?;
    let values = (0..count)
        .map(|_| exponential_quantile(rate, rng.uniform()))
        .collect::<Result<Vec<_>>>()?;
    SampleSet::new(values)
}

/// iid `N(0, sd^2)` samples on a unit-spaced grid; `sd == 0` gives zeros
/// without consuming the generator.
pub fn normal_field(rng: &mut Rng, dims: Vec<usize>, sd: f64) -> Result<Field> {
    if !(sd.is_finite() && sd >= 0.0) {
        return Err(Error::InvalidSigma(sd));
    }
    if sd == 0.0 {
        return Field::zeros(dims);
    }
    let n = dims.iter().product();
    Field::from_values(dims, (0..n).map(|_| rng.normal(0.0, sd)).collect())
}
