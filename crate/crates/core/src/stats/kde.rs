use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::par::{self, Execution};
use crate::stats::sample::SampleSet;

/// A regular evaluation axis `min, min + step, ...` with `count` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub min: f64,
    pub step: f64,
    pub count: usize,
}

impl GridAxis {
    pub fn new(min: f64, step: f64, count: usize) -> Result<Self> {
        if !min.is_finite() || !(step.is_finite() && step > 0.0) || count == 0 {
            return Err(Error::InvalidParameter(format!(
                "bad grid axis min={min} step={step} count={count}"
            )));
        }
        Ok(Self { min, step, count })
    }

    /// Nodes from `min` up to `max` inclusive (up to rounding).
    pub fn from_range(min: f64, step: f64, max: f64) -> Result<Self> {
        if !(max.is_finite() && max >= min) {
            return Err(Error::InvalidParameter(format!("grid max {max} below min {min}")));
        }
        let count = ((max - min) / step * (1.0 + 1e-12)).floor() as usize + 1;
        Self::new(min, step, count)
    }

    pub fn node(&self, i: usize) -> f64 {
        self.min + i as f64 * self.step
    }

    pub fn max(&self) -> f64 {
        self.node(self.count - 1)
    }
}

/// Gaussian KDE `(1/n) sum_i K_sigma(x - x_i)` of `d`-dimensional points on
/// a regular grid, with the exact (untruncated) product kernel.
///
/// Every point must have `grid.len()` coordinates.
pub fn kde(points: &[Vec<f64>], sigma: f64, grid: &[GridAxis]) -> Result<Field> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidSigma(sigma));
    }
    if points.is_empty() {
        return Err(Error::EmptySample);
    }
    let d = grid.len();
    if let Some(bad) = points.iter().find(|p| p.len() != d) {
        return Err(Error::RankMismatch {
            expected: d,
            found: bad.len(),
        });
    }
    if points.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("non-finite point coordinate".into()));
    }
    for (axis, g) in grid.iter().enumerate() {
        let outside = points
            .iter()
            .filter(|p| p[axis] < g.min || p[axis] > g.max())
            .count();
        if outside > 0 {
            log::warn!("{outside} point(s) fall outside the KDE grid on axis {axis}");
        }
    }

    let dims: Vec<usize> = grid.iter().map(|g| g.count).collect();
    let spacing: Vec<f64> = grid.iter().map(|g| g.step).collect();
    let shape = Field::zeros(dims.clone())?;
    let norm = 1.0 / ((2.0 * PI).sqrt() * sigma).powi(d as i32);
    let n = points.len() as f64;

    let values = par::map_range(shape.len(), Execution::default(), |flat| {
        let idx = shape.multi_index(flat);
        let node: Vec<f64> = idx.iter().zip(grid).map(|(&i, g)| g.node(i)).collect();
        let sum: f64 = points
            .iter()
            .map(|p| {
                let r2: f64 = p.iter().zip(&node).map(|(a, b)| (b - a) * (b - a)).sum();
                (-r2 / (2.0 * sigma * sigma)).exp()
            })
            .sum();
        norm * sum / n
    });
    Field::new(dims, spacing, values)
}

pub fn kde_1d(samples: &SampleSet, sigma: f64, grid: GridAxis) -> Result<Field> {
    let points: Vec<Vec<f64>> = samples.values().iter().map(|&v| vec![v]).collect();
    kde(&points, sigma, &[grid])
}
