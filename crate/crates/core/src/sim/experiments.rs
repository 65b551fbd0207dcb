//! Signal-recovery and Gaussianness experiments.
//!
//! All smoothing here uses zero padding and the fixed windows of the
//! original scripts (11 taps in 1-D, 5x5 in 2-D, 21x21 for the key image).

use crate::convolve::{smooth, smooth_at, BoundaryMode};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::kernel::separable_kernel;
use crate::par::{self, Execution};
use crate::sim::draws::normal_field;
use crate::sim::key::{key_image, KEY_EDGE_PIXEL};
use crate::sim::report::{ExperimentReport, Table};
use crate::sim::rng::Rng;
use crate::stats::{normal_probability_plot, SampleSet};

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

fn check_noise(v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::InvalidParameter(format!("noise sd must be >= 0, got {v}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OneDParams {
    pub bandwidth: f64,
    pub noise_sd: f64,
    pub radius: usize,
}

impl Default for OneDParams {
    fn default() -> Self {
        Self {
            bandwidth: 10.0,
            noise_sd: 2.0,
            radius: 5,
        }
    }
}

/// `mu(t) = (t - 50)^2 / 500`.
pub(crate) fn parabola(t: f64) -> f64 {
    (t - 50.0) * (t - 50.0) / 500.0
}

/// Noisy parabola on `t = 1..=100`, smoothed with bandwidth `bandwidth`.
pub fn experiment_1d(rng: &mut Rng, params: &OneDParams) -> Result<ExperimentReport> {
    check_positive("bandwidth", params.bandwidth)?;
    check_noise(params.noise_sd)?;
    let n = 100;
    let mu = Field::from_values(vec![n], (1..=n).map(|t| parabola(t as f64)).collect())?;
    let noise = normal_field(rng, vec![n], params.noise_sd)?;
    let noisy = Field::from_values(
        vec![n],
        mu.values().iter().zip(noise.values()).map(|(m, e)| m + e).collect(),
    )?;
    let kernel = separable_kernel(params.bandwidth, params.radius, 1, &[1.0])?;
    let smoothed = smooth(&noisy, &kernel, BoundaryMode::ZeroPad)?;

    let mut report = ExperimentReport::new("1d");
    report.param("seed", rng.seed());
    report.param("bandwidth", params.bandwidth);
    report.param("noise_sd", params.noise_sd);
    report.param("radius", params.radius);
    report.metric("rmse_noisy", noisy.rmse(&mu)?);
    report.metric("rmse_smoothed", smoothed.rmse(&mu)?);

    let mut table = Table::new("signal", &["t", "mu", "noisy", "smoothed"]);
    for i in 0..n {
        table.push(vec![
            (i + 1) as f64,
            mu.values()[i],
            noisy.values()[i],
            smoothed.values()[i],
        ]);
    }
    report.tables.push(table);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoDParams {
    pub bandwidth: f64,
    pub noise_sd: f64,
    pub radius: usize,
}

impl Default for TwoDParams {
    fn default() -> Self {
        Self {
            bandwidth: 1.0,
            noise_sd: 0.4,
            radius: 2,
        }
    }
}

/// `cos(10 t1) + sin(8 t2)` with `t1` along columns and `t2` along rows.
pub(crate) fn wave(t1: f64, t2: f64) -> f64 {
    (10.0 * t1).cos() + (8.0 * t2).sin()
}

/// Noisy 101 x 101 wave pattern on `[0, 1]^2`, smoothed with a 5x5 window.
pub fn experiment_2d(rng: &mut Rng, params: &TwoDParams) -> Result<ExperimentReport> {
    check_positive("bandwidth", params.bandwidth)?;
    check_noise(params.noise_sd)?;
    let n = 101;
    let step = 0.01;
    let mu = Field::from_fn(vec![n, n], vec![1.0, 1.0], |i| {
        wave(i[1] as f64 * step, i[0] as f64 * step)
    })?;
    let noise = normal_field(rng, vec![n, n], params.noise_sd)?;
    let noisy = mu.with_values(mu.values().iter().zip(noise.values()).map(|(m, e)| m + e).collect());
    let kernel = separable_kernel(params.bandwidth, params.radius, 2, &[1.0, 1.0])?;
    let smoothed = smooth(&noisy, &kernel, BoundaryMode::ZeroPad)?;

    let mut report = ExperimentReport::new("2d");
    report.param("seed", rng.seed());
    report.param("bandwidth", params.bandwidth);
    report.param("noise_sd", params.noise_sd);
    report.param("radius", params.radius);
    report.metric("rmse_noisy", noisy.rmse(&mu)?);
    report.metric("rmse_smoothed", smoothed.rmse(&mu)?);

    let width = 2 * params.radius + 1;
    let mut weights = Table::new("kernel", &["row", "col", "weight"]);
    for (k, w) in kernel.dense().into_iter().enumerate() {
        weights.push(vec![(k / width) as f64, (k % width) as f64, w]);
    }
    report.tables.push(weights);
    report.fields.push(("signal".into(), mu));
    report.fields.push(("noisy".into(), noisy));
    report.fields.push(("smoothed".into(), smoothed));
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeyParams {
    pub sigmas: Vec<f64>,
    pub noise_sd: f64,
    pub radius: usize,
}

impl Default for KeyParams {
    fn default() -> Self {
        Self {
            sigmas: vec![1.0, 10.0],
            noise_sd: 5.0,
            radius: 10,
        }
    }
}

fn metric_key(prefix: &str, sigma: f64) -> String {
    format!("{prefix}_sigma_{sigma}")
}

/// Key image under heavy noise, recovered by smoothing at each bandwidth.
pub fn experiment_key(rng: &mut Rng, params: &KeyParams) -> Result<ExperimentReport> {
    if params.sigmas.is_empty() {
        return Err(Error::BadSigmaList);
    }
    for &s in &params.sigmas {
        check_positive("sigma", s)?;
    }
    check_noise(params.noise_sd)?;
    let signal = key_image();
    let noise = normal_field(rng, signal.dims().to_vec(), params.noise_sd)?;
    let noisy = signal.with_values(
        signal.values().iter().zip(noise.values()).map(|(s, e)| s + e).collect(),
    );

    let mut report = ExperimentReport::new("key");
    report.param("seed", rng.seed());
    report.param(
        "sigmas",
        params.sigmas.iter().map(f64::to_string).collect::<Vec<_>>().join(","),
    );
    report.param("noise_sd", params.noise_sd);
    report.param("radius", params.radius);
    report.metric("rmse_raw", noisy.rmse(&signal)?);

    let row = KEY_EDGE_PIXEL[0];
    let cols = signal.dims()[1];
    let mut columns = vec!["col".to_string(), "signal".into(), "noisy".into()];
    let mut profiles = vec![
        (0..cols).map(|c| c as f64).collect::<Vec<_>>(),
        signal.values()[row * cols..(row + 1) * cols].to_vec(),
        noisy.values()[row * cols..(row + 1) * cols].to_vec(),
    ];
    report.fields.push(("signal".into(), signal.clone()));
    report.fields.push(("noisy".into(), noisy.clone()));
    for &sigma in &params.sigmas {
        let kernel = separable_kernel(sigma, params.radius, 2, &[1.0, 1.0])?;
        let smoothed = smooth(&noisy, &kernel, BoundaryMode::ZeroPad)?;
        report.metric(&metric_key("rmse", sigma), smoothed.rmse(&signal)?);
        columns.push(metric_key("smoothed", sigma));
        profiles.push(smoothed.values()[row * cols..(row + 1) * cols].to_vec());
        report.fields.push((metric_key("smoothed", sigma), smoothed));
    }

    let mut table = Table {
        name: "profile".into(),
        columns,
        rows: Vec::new(),
    };
    for c in 0..cols {
        table.push(profiles.iter().map(|p| p[c]).collect());
    }
    report.tables.push(table);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussiannessParams {
    pub reps: usize,
    pub sigma: f64,
    pub radius: usize,
    pub noise_sd: f64,
    /// Zero-based `(row, col)` in the key image.
    pub pixel: [usize; 2],
}

impl Default for GaussiannessParams {
    fn default() -> Self {
        Self {
            reps: 50,
            sigma: 100.0,
            radius: 10,
            noise_sd: 5.0,
            pixel: KEY_EDGE_PIXEL,
        }
    }
}

/// Repeated noisy acquisitions of the key image, observed at one pixel
/// before and after smoothing.
///
/// Repetition `i` draws its noise field from `rng.child(i)`.
pub fn experiment_gaussianness(rng: &mut Rng, params: &GaussiannessParams) -> Result<ExperimentReport> {
    if params.reps < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: params.reps,
        });
    }
    check_positive("sigma", params.sigma)?;
    check_positive("noise sd", params.noise_sd)?;
    let signal = key_image();
    if signal.flat_index(&params.pixel).is_err() || !signal.is_interior(&params.pixel, params.radius) {
        return Err(Error::InvalidParameter(format!(
            "pixel {:?} is not at least {} samples from the border",
            params.pixel, params.radius
        )));
    }
    let kernel = separable_kernel(params.sigma, params.radius, 2, &[1.0, 1.0])?;

    let master = rng.clone();
    let samples = par::map_range(params.reps, Execution::default(), |i| -> Result<(f64, f64)> {
        let mut child = master.child(i as u64);
        let noise = normal_field(&mut child, signal.dims().to_vec(), params.noise_sd)?;
        let f = signal.with_values(
            signal.values().iter().zip(noise.values()).map(|(s, e)| s + e).collect(),
        );
        let raw = f.get(&params.pixel)?;
        let smoothed = smooth_at(&f, &kernel, BoundaryMode::ZeroPad, &params.pixel)?;
        Ok((raw, smoothed))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let raw = SampleSet::new(samples.iter().map(|s| s.0).collect())?;
    let smoothed = SampleSet::new(samples.iter().map(|s| s.1).collect())?;
    let var_raw = raw.variance().expect("reps >= 2");
    let var_smoothed = smoothed.variance().expect("reps >= 2");
    let qq_raw = normal_probability_plot(&raw)?;
    let qq_smoothed = normal_probability_plot(&smoothed)?;

    let mut report = ExperimentReport::new("gaussianness");
    report.param("seed", rng.seed());
    report.param("reps", params.reps);
    report.param("sigma", params.sigma);
    report.param("radius", params.radius);
    report.param("noise_sd", params.noise_sd);
    report.param("pixel_row", params.pixel[0]);
    report.param("pixel_col", params.pixel[1]);
    report.metric("var_raw", var_raw);
    report.metric("var_smoothed", var_smoothed);
    report.metric("variance_ratio", var_smoothed / var_raw);
    report.metric("expected_variance_ratio", kernel.dense_sum_of_squares());
    // A constant column cannot be scored; report zero linearity.
    report.metric("r2_raw", qq_raw.middle_fit().r_squared.unwrap_or(0.0));
    report.metric("r2_smoothed", qq_smoothed.middle_fit().r_squared.unwrap_or(0.0));

    let mut values = Table::new("values", &["rep", "raw", "smoothed"]);
    for (i, (r, s)) in samples.iter().enumerate() {
        values.push(vec![i as f64, *r, *s]);
    }
    report.tables.push(values);
    for (name, curve) in [("qq_raw", &qq_raw), ("qq_smoothed", &qq_smoothed)] {
        let mut t = Table::new(name, &["p", "normal_quantile", "value"]);
        for q in curve.points() {
            t.push(vec![q.p, q.qx, q.qy]);
        }
        report.tables.push(t);
    }
    Ok(report)
}
