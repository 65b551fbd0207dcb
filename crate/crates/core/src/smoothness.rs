//! Effective-FWHM estimation along lattice edges.
//!
//! For `n` residual images `r_ij` (image `i`, voxel `j`), residuals are
//! normalized per voxel to unit length across images, `u_ij = r_ij / |r_.j|`.
//! Along an edge between voxels 1 and 2 of length `dx`:
//!
//! ```text
//! du     = sqrt(sum_i (u_i1 - u_i2)^2)
//! lambda = du / dx
//! eFWHM  = sqrt(4 ln 2) / lambda
//! ```
//!
//! `lambda` is a roughness (1/length) and the eFWHM a length, both in the
//! units of the field spacing.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::par::{self, Execution};

/// `sqrt(4 ln 2)`.
pub const SQRT_4_LN_2: f64 = 1.665_109_222_315_395_5;

/// `n >= 2` residual images sharing a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualEnsemble {
    images: Vec<Field>,
}

impl ResidualEnsemble {
    pub fn new(images: Vec<Field>) -> Result<Self> {
        if images.len() < 2 {
            return Err(Error::TooFewImages(images.len()));
        }
        let first = &images[0];
        if let Some(index) = images
            .iter()
            .position(|f| f.dims() != first.dims() || f.spacing() != first.spacing())
        {
            return Err(Error::EnsembleMismatch { index });
        }
        Ok(Self { images })
    }

    /// Residuals of the mean model: each observation minus the voxelwise
    /// mean across the ensemble.
    pub fn from_observations(observations: Vec<Field>) -> Result<Self> {
        let ens = Self::new(observations)?;
        let n = ens.images.len() as f64;
        let len = ens.images[0].len();
        let mut mean = vec![0.0; len];
        for img in &ens.images {
            for (m, v) in mean.iter_mut().zip(img.values()) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let images = ens
            .images
            .iter()
            .map(|img| {
                img.with_values(img.values().iter().zip(&mean).map(|(v, m)| v - m).collect())
            })
            .collect();
        Ok(Self { images })
    }

    pub fn images(&self) -> &[Field] {
        &self.images
    }

    pub fn n_images(&self) -> usize {
        self.images.len()
    }

    pub fn dims(&self) -> &[usize] {
        self.images[0].dims()
    }

    pub fn spacing(&self) -> &[f64] {
        self.images[0].spacing()
    }

    fn lattice(&self) -> &Field {
        &self.images[0]
    }
}

/// Scales every voxel's residual vector to unit Euclidean length.
pub fn normalize_residuals(ens: &ResidualEnsemble) -> Result<ResidualEnsemble> {
    let len = ens.lattice().len();
    let mut norms = vec![0.0; len];
    for img in &ens.images {
        for (s, r) in norms.iter_mut().zip(img.values()) {
            *s += r * r;
        }
    }
    if let Some(voxel) = norms.iter().position(|&s| s <= 0.0) {
        return Err(Error::ZeroResidual { voxel });
    }
    norms.iter_mut().for_each(|s| *s = s.sqrt());
    let images = ens
        .images
        .iter()
        .map(|img| img.with_values(img.values().iter().zip(&norms).map(|(r, s)| r / s).collect()))
        .collect();
    Ok(ResidualEnsemble { images })
}

/// Two voxels (flat row-major indices, `a < b`) adjacent along `axis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub axis: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeEstimate {
    pub edge: Edge,
    pub delta_u: f64,
    /// Roughness, 1/length.
    pub lambda: f64,
    /// Length; `+inf` iff `lambda == 0`.
    pub efwhm: f64,
}

fn estimate(normalized: &ResidualEnsemble, edge: Edge, delta_x: f64) -> EdgeEstimate {
    let du2: f64 = normalized
        .images
        .iter()
        .map(|u| {
            let d = u.values()[edge.a] - u.values()[edge.b];
            d * d
        })
        .sum();
    let delta_u = du2.sqrt();
    let lambda = delta_u / delta_x;
    let efwhm = if lambda > 0.0 {
        SQRT_4_LN_2 / lambda
    } else {
        f64::INFINITY
    };
    EdgeEstimate {
        edge,
        delta_u,
        lambda,
        efwhm,
    }
}

/// eFWHM along the edge between voxels `a` and `b` of an already
/// normalized ensemble.
pub fn edge_efwhm(
    normalized: &ResidualEnsemble,
    a: &[usize],
    b: &[usize],
    delta_x: f64,
) -> Result<EdgeEstimate> {
    if !(delta_x.is_finite() && delta_x > 0.0) {
        return Err(Error::InvalidSpacing {
            axis: 0,
            value: delta_x,
        });
    }
    let lattice = normalized.lattice();
    let fa = lattice.flat_index(a)?;
    let fb = lattice.flat_index(b)?;
    let differing: Vec<usize> = (0..a.len()).filter(|&k| a[k] != b[k]).collect();
    let axis = match differing.as_slice() {
        [k] if a[*k].abs_diff(b[*k]) == 1 => *k,
        _ => return Err(Error::NotAdjacent { a: fa, b: fb }),
    };
    let edge = Edge {
        a: fa.min(fb),
        b: fa.max(fb),
        axis,
    };
    Ok(estimate(normalized, edge, delta_x))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EfwhmOptions {
    /// Edges with a voxel closer than this to any border are kept in the
    /// per-edge list but left out of the summaries. Zero includes all.
    pub margin: usize,
    pub exec: Execution,
}

impl Default for EfwhmOptions {
    fn default() -> Self {
        Self {
            margin: 1,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EfwhmSummary {
    /// Every lattice edge, grouped by axis, in row-major order of `a`.
    pub edges: Vec<EdgeEstimate>,
    /// Edges entering the summaries.
    pub included: usize,
    /// Included edges with infinite eFWHM (excluded from the median).
    pub infinite: usize,
    /// Median of the finite included eFWHM values; the headline number.
    pub median: Option<f64>,
    /// `sqrt(4 ln 2) / sqrt(mean(lambda^2))` over included edges.
    pub rms_lambda_fwhm: Option<f64>,
}

pub fn field_efwhm(ens: &ResidualEnsemble, opts: EfwhmOptions) -> Result<EfwhmSummary> {
    if ens.dims().iter().any(|&d| d < 2) {
        return Err(Error::NoEdges);
    }
    let normalized = normalize_residuals(ens)?;
    let lattice = normalized.lattice();

    let mut edges = Vec::new();
    for axis in 0..lattice.rank() {
        let stride = lattice.stride(axis);
        let extent = lattice.dims()[axis];
        for a in 0..lattice.len() {
            if (a / stride) % extent + 1 < extent {
                edges.push(Edge {
                    a,
                    b: a + stride,
                    axis,
                });
            }
        }
    }
    let spacing = lattice.spacing().to_vec();
    let estimates = par::map_range(edges.len(), opts.exec, |i| {
        estimate(&normalized, edges[i], spacing[edges[i].axis])
    });

    let keep = |e: &EdgeEstimate| {
        opts.margin == 0
            || (lattice.is_interior(&lattice.multi_index(e.edge.a), opts.margin)
                && lattice.is_interior(&lattice.multi_index(e.edge.b), opts.margin))
    };
    let included: Vec<&EdgeEstimate> = estimates.iter().filter(|e| keep(e)).collect();
    let mut finite: Vec<f64> = included
        .iter()
        .map(|e| e.efwhm)
        .filter(|v| v.is_finite())
        .collect();
    finite.sort_by(f64::total_cmp);
    let median = match finite.len() {
        0 => None,
        n if n % 2 == 1 => Some(finite[n / 2]),
        n => Some(0.5 * (finite[n / 2 - 1] + finite[n / 2])),
    };
    let rms_lambda_fwhm = if included.is_empty() {
        None
    } else {
        let mut sq: Vec<f64> = included.iter().map(|e| e.lambda * e.lambda).collect();
        sq.sort_by(f64::total_cmp);
        let mean = sq.iter().sum::<f64>() / sq.len() as f64;
        (mean > 0.0).then(|| SQRT_4_LN_2 / mean.sqrt())
    };

    Ok(EfwhmSummary {
        included: included.len(),
        infinite: included.len() - finite.len(),
        median,
        rms_lambda_fwhm,
        edges: estimates,
    })
}
