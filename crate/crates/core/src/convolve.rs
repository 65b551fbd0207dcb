//! Separable 'same'-shaped convolution with explicit boundary handling.
//!
//! Kernels are symmetric, so the passes are implemented as correlation:
//! `out[j] = sum_k w[k] * x[j + k - r]`. Each output sample accumulates its
//! taps in ascending `k` in `f64`, independent of how lines are scheduled.

use crate::error::{Error, Result};
use crate::field::{increment, Field};
use crate::kernel::{Kernel1D, SeparableKernel};
use crate::par::{self, Execution};

/// Source of samples that fall outside the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryMode {
    /// Out-of-range samples are zero.
    #[default]
    ZeroPad,
    /// Half-sample symmetric mirror: `... b a | a b c ... x y z | z y ...`.
    Reflect,
    /// Nearest edge sample.
    Replicate,
}

impl BoundaryMode {
    pub const ALL: [BoundaryMode; 3] = [
        BoundaryMode::ZeroPad,
        BoundaryMode::Reflect,
        BoundaryMode::Replicate,
    ];

    /// Maps a possibly out-of-range position onto `0..n`. Reflection
    /// repeats with period `2n`, so kernels wider than the axis are fine.
    fn resolve(self, i: isize, n: usize) -> Option<usize> {
        let n = n as isize;
        if (0..n).contains(&i) {
            return Some(i as usize);
        }
        match self {
            BoundaryMode::ZeroPad => None,
            BoundaryMode::Replicate => Some(i.clamp(0, n - 1) as usize),
            BoundaryMode::Reflect => {
                let m = i.rem_euclid(2 * n);
                Some(if m < n { m } else { 2 * n - 1 - m } as usize)
            }
        }
    }
}

fn check_axis(field: &Field, axis: usize) -> Result<()> {
    if axis >= field.rank() {
        return Err(Error::AxisOutOfRange {
            axis,
            rank: field.rank(),
        });
    }
    Ok(())
}

/// `(source position, weight)` for every tap of every output position.
fn line_taps(len: usize, kernel: &Kernel1D, boundary: BoundaryMode) -> Vec<Vec<(usize, f64)>> {
    let r = kernel.radius() as isize;
    (0..len as isize)
        .map(|j| {
            kernel
                .weights()
                .iter()
                .enumerate()
                .filter_map(|(k, &w)| boundary.resolve(j + k as isize - r, len).map(|s| (s, w)))
                .collect()
        })
        .collect()
}

pub fn convolve_axis(
    field: &Field,
    kernel: &Kernel1D,
    axis: usize,
    boundary: BoundaryMode,
) -> Result<Field> {
    convolve_axis_with(field, kernel, axis, boundary, Execution::default())
}

pub fn convolve_axis_with(
    field: &Field,
    kernel: &Kernel1D,
    axis: usize,
    boundary: BoundaryMode,
    exec: Execution,
) -> Result<Field> {
    check_axis(field, axis)?;
    let len = field.dims()[axis];
    let stride = field.stride(axis);
    let block = len * stride;
    let taps = line_taps(len, kernel, boundary);
    let src = field.values();
    let mut out = vec![0.0; field.len()];

    if stride == 1 {
        // Last axis: one chunk per contiguous line.
        par::for_each_chunk(&mut out, len, exec, |line, dst| {
            let row = &src[line * len..(line + 1) * len];
            for (d, line_taps) in dst.iter_mut().zip(&taps) {
                let mut acc = 0.0;
                for &(s, w) in line_taps {
                    acc += w * row[s];
                }
                *d = acc;
            }
        });
    } else {
        // One chunk per (outer, position) pair; the inner run is contiguous.
        par::for_each_chunk(&mut out, stride, exec, |run, dst| {
            let base = (run / len) * block;
            for &(s, w) in &taps[run % len] {
                let row = &src[base + s * stride..base + (s + 1) * stride];
                for (d, &x) in dst.iter_mut().zip(row) {
                    *d += w * x;
                }
            }
        });
    }
    Ok(field.with_values(out))
}

fn check_rank(field: &Field, kernel: &SeparableKernel) -> Result<()> {
    if kernel.rank() != field.rank() {
        return Err(Error::RankMismatch {
            expected: field.rank(),
            found: kernel.rank(),
        });
    }
    Ok(())
}

/// Separable smoothing: one 1-D pass per axis, axis 0 first.
pub fn smooth(field: &Field, kernel: &SeparableKernel, boundary: BoundaryMode) -> Result<Field> {
    smooth_with(field, kernel, boundary, Execution::default())
}

pub fn smooth_with(
    field: &Field,
    kernel: &SeparableKernel,
    boundary: BoundaryMode,
    exec: Execution,
) -> Result<Field> {
    check_rank(field, kernel)?;
    let mut out = field.clone();
    for (axis, k) in kernel.axes().iter().enumerate() {
        out = convolve_axis_with(&out, k, axis, boundary, exec)?;
    }
    Ok(out)
}

/// Brute-force n-D window sum with the materialized outer-product kernel.
///
/// O((2r+1)^n) per sample; serves as the reference for [`smooth`].
pub fn convolve_dense(
    field: &Field,
    kernel: &SeparableKernel,
    boundary: BoundaryMode,
) -> Result<Field> {
    convolve_dense_with(field, kernel, boundary, Execution::default())
}

pub fn convolve_dense_with(
    field: &Field,
    kernel: &SeparableKernel,
    boundary: BoundaryMode,
    exec: Execution,
) -> Result<Field> {
    check_rank(field, kernel)?;
    let dense = kernel.dense();
    let kdims = kernel.dense_dims();
    let out = par::map_range(field.len(), exec, |flat| {
        let center = field.multi_index(flat);
        dense_sample(field, &dense, &kdims, boundary, &center)
    });
    Ok(field.with_values(out))
}

/// Dense window sum at a single sample.
pub fn smooth_at(
    field: &Field,
    kernel: &SeparableKernel,
    boundary: BoundaryMode,
    index: &[usize],
) -> Result<f64> {
    check_rank(field, kernel)?;
    field.flat_index(index)?;
    Ok(dense_sample(
        field,
        &kernel.dense(),
        &kernel.dense_dims(),
        boundary,
        index,
    ))
}

fn dense_sample(
    field: &Field,
    dense: &[f64],
    kdims: &[usize],
    boundary: BoundaryMode,
    center: &[usize],
) -> f64 {
    let dims = field.dims();
    let values = field.values();
    let mut offset = vec![0usize; kdims.len()];
    let mut acc = 0.0;
    'taps: for &w in dense {
        let mut flat = 0usize;
        for axis in 0..dims.len() {
            let r = (kdims[axis] / 2) as isize;
            let pos = center[axis] as isize + offset[axis] as isize - r;
            match boundary.resolve(pos, dims[axis]) {
                Some(p) => flat = flat * dims[axis] + p,
                None => {
                    increment(&mut offset, kdims);
                    continue 'taps;
                }
            }
        }
        acc += w * values[flat];
        increment(&mut offset, kdims);
    }
    acc
}
