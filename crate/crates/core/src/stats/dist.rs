//! Analytic normal and exponential distributions.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::stats::sample::{sample_quantile, SampleSet};

/// Anything that can be inverted at a probability `p`.
pub trait QuantileFunction {
    fn quantile(&self, p: f64) -> Result<f64>;
}

impl QuantileFunction for SampleSet {
    fn quantile(&self, p: f64) -> Result<f64> {
        sample_quantile(self, p)
    }
}

pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal CDF via `erfc`.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

fn normal_sf(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

// Rational approximation of the standard normal quantile (Acklam), with
// relative error below 1.2e-9 before refinement.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_690e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [
    7.784_695_709_041_462e-3,
    3.224_671_290_700_398e-1,
    2.445_134_137_142_996,
    3.754_408_661_907_416,
];
const P_LOW: f64 = 0.02425;

fn acklam(p: f64) -> f64 {
    let tail = |q: f64| {
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < P_LOW {
        tail((-2.0 * p.ln()).sqrt())
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail((-2.0 * (1.0 - p).ln()).sqrt())
    }
}

/// `Phi^{-1}(p)`: rational approximation plus one Newton step on the
/// erfc-based CDF.
pub fn normal_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    let x = acklam(p);
    // Work in the tail that p lives in; 1 - p is exact for p >= 0.5.
    let err = if p < 0.5 {
        normal_cdf(x) - p
    } else {
        (1.0 - p) - normal_sf(x)
    };
    Ok(x - err / normal_pdf(x))
}

/// `-ln(1 - p) / rate`.
pub fn exponential_quantile(rate: f64, p: f64) -> Result<f64> {
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::InvalidRate(rate));
    }
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok((-p).ln_1p() / -rate)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normal {
    pub mean: f64,
    pub sd: f64,
}

impl Normal {
    pub const STANDARD: Normal = Normal { mean: 0.0, sd: 1.0 };

    pub fn new(mean: f64, sd: f64) -> Result<Self> {
        if !(sd.is_finite() && sd > 0.0 && mean.is_finite()) {
            return Err(Error::InvalidSigma(sd));
        }
        Ok(Self { mean, sd })
    }
}

impl QuantileFunction for Normal {
    fn quantile(&self, p: f64) -> Result<f64> {
        Ok(self.mean + self.sd * normal_quantile(p)?)
    }
}

/// Rate-parameterized exponential distribution (mean `1 / rate`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponential {
    pub rate: f64,
}

impl Exponential {
    pub fn new(rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidRate(rate));
        }
        Ok(Self { rate })
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            -(-self.rate * x).exp_m1()
        }
    }
}

impl QuantileFunction for Exponential {
    fn quantile(&self, p: f64) -> Result<f64> {
        exponential_quantile(self.rate, p)
    }
}
