//! Sampled n-dimensional fields stored in row-major order.

use crate::error::{Error, Result};

/// An n-D grid of finite real samples with per-axis spacing.
///
/// The last axis varies fastest. A 2-D image is `dims = [rows, cols]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    dims: Vec<usize>,
    spacing: Vec<f64>,
    values: Vec<f64>,
}

impl Field {
    pub fn new(dims: Vec<usize>, spacing: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        validate_shape(&dims, &spacing)?;
        let expected: usize = dims.iter().product();
        if expected != values.len() {
            return Err(Error::LengthMismatch {
                expected,
                found: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            dims,
            spacing,
            values,
        })
    }

    /// Unit spacing on every axis.
    pub fn from_values(dims: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        let spacing = vec![1.0; dims.len()];
        Self::new(dims, spacing, values)
    }

    pub fn filled(dims: Vec<usize>, value: f64) -> Result<Self> {
        let n = dims.iter().product();
        Self::from_values(dims, vec![value; n])
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        Self::filled(dims, 0.0)
    }

    /// Builds a field whose sample at each multi-index is `f(index)`.
    pub fn from_fn<F>(dims: Vec<usize>, spacing: Vec<f64>, mut f: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> f64,
    {
        validate_shape(&dims, &spacing)?;
        let n: usize = dims.iter().product();
        let mut idx = vec![0usize; dims.len()];
        let mut values = Vec::with_capacity(n);
        for _ in 0..n {
            values.push(f(&idx));
            increment(&mut idx, &dims);
        }
        Self::new(dims, spacing, values)
    }

    /// Single unit sample at `at`, zeros elsewhere.
    pub fn impulse(dims: Vec<usize>, at: &[usize]) -> Result<Self> {
        let mut field = Self::zeros(dims)?;
        let flat = field.flat_index(at)?;
        field.values[flat] = 1.0;
        Ok(field)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Distance in the flat buffer between neighbours along `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        self.dims[axis + 1..].iter().product()
    }

    pub fn flat_index(&self, index: &[usize]) -> Result<usize> {
        if index.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: index.len(),
            });
        }
        let mut flat = 0;
        for (&i, &d) in index.iter().zip(&self.dims) {
            if i >= d {
                return Err(Error::VoxelOutOfRange(i));
            }
            flat = flat * d + i;
        }
        Ok(flat)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank()];
        for axis in (0..self.rank()).rev() {
            idx[axis] = flat % self.dims[axis];
            flat /= self.dims[axis];
        }
        idx
    }

    pub fn get(&self, index: &[usize]) -> Result<f64> {
        Ok(self.values[self.flat_index(index)?])
    }

    /// Same shape, new samples. Used by the convolution passes, whose
    /// outputs are finite whenever their inputs are.
    pub(crate) fn with_values(&self, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), self.values.len());
        Self {
            dims: self.dims.clone(),
            spacing: self.spacing.clone(),
            values,
        }
    }

    /// Replaces the per-axis spacing, keeping the samples.
    pub fn with_spacing(mut self, spacing: Vec<f64>) -> Result<Self> {
        validate_shape(&self.dims, &spacing)?;
        self.spacing = spacing;
        Ok(self)
    }

    /// Applies `f` sample-wise; rejects non-finite results.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> Result<Self> {
        Self::new(
            self.dims.clone(),
            self.spacing.clone(),
            self.values.iter().map(|&v| f(v)).collect(),
        )
    }

    /// Root-mean-square difference to another field of the same shape.
    pub fn rmse(&self, other: &Field) -> Result<f64> {
        if self.dims != other.dims {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let ss: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        Ok((ss / self.len() as f64).sqrt())
    }

    pub fn max_abs_diff(&self, other: &Field) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// True when `index` lies at least `margin` samples from every border.
    pub fn is_interior(&self, index: &[usize], margin: usize) -> bool {
        index
            .iter()
            .zip(&self.dims)
            .all(|(&i, &d)| i >= margin && i + margin < d)
    }
}

fn validate_shape(dims: &[usize], spacing: &[f64]) -> Result<()> {
    if dims.is_empty() {
        return Err(Error::EmptyDims);
    }
    if let Some(axis) = dims.iter().position(|&d| d == 0) {
        return Err(Error::ZeroExtent { axis });
    }
    if spacing.len() != dims.len() {
        return Err(Error::RankMismatch {
            expected: dims.len(),
            found: spacing.len(),
        });
    }
    if let Some((axis, &value)) = spacing
        .iter()
        .enumerate()
        .find(|(_, s)| !(s.is_finite() && **s > 0.0))
    {
        return Err(Error::InvalidSpacing { axis, value });
    }
    Ok(())
}

/// Advances a row-major multi-index by one position.
pub(crate) fn increment(idx: &mut [usize], dims: &[usize]) {
    for axis in (0..dims.len()).rev() {
        idx[axis] += 1;
        if idx[axis] < dims[axis] {
            return;
        }
        idx[axis] = 0;
    }
}
