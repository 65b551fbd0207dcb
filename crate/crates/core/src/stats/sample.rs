use crate::error::{Error, Result};

/// A non-empty set of finite observations with its order statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
    sorted: Vec<f64>,
}

impl SampleSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let mut sorted = values.clone();
        sorted.sort_by(f64::total_cmp);
        Ok(Self { values, sorted })
    }

    /// Observations in their original order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `X_(1) <= ... <= X_(n)`; ties are kept.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Unbiased sample variance; `None` for a single observation.
    pub fn variance(&self) -> Option<f64> {
        let n = self.len();
        if n < 2 {
            return None;
        }
        let m = self.mean();
        Some(self.values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1) as f64)
    }
}

/// Fraction of observations `<= q`.
pub fn empirical_cdf(s: &SampleSet, q: f64) -> f64 {
    s.sorted.partition_point(|&x| x <= q) as f64 / s.len() as f64
}

/// Sample quantile with plotting positions `p_j = (j - 0.5) / n`.
///
/// Linear between adjacent positions, clamped to `X_(1)` / `X_(n)` outside
/// `[p_1, p_n]`.
pub fn sample_quantile(s: &SampleSet, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    let x = &s.sorted;
    let n = x.len();
    // One-based fractional position h solves p = (h - 0.5) / n.
    let h = p * n as f64 + 0.5;
    if h <= 1.0 {
        return Ok(x[0]);
    }
    if h >= n as f64 {
        return Ok(x[n - 1]);
    }
    let j = h.floor() as usize;
    let frac = h - j as f64;
    let (lo, hi) = (x[j - 1], x[j]);
    Ok(if frac == 0.0 { lo } else { lo + frac * (hi - lo) })
}
