use gksmooth::sim::{exponential_draws, normal_draws, Rng};
use gksmooth::stats::{
    exponential_quantile, kde_1d, normal_probability_plot, qq_curve, GridAxis, Normal,
    QuantileFunction, SampleSet,
};
use gksmooth::{convolve_axis, gaussian_kernel_1d, BoundaryMode, Field};

#[test]
fn gaussian_qq_is_a_line() {
    let (m1, s1, m2, s2) = (1.0, 2.0, -3.0, 0.5);
    let curve = qq_curve(&Normal::new(m1, s1).unwrap(), &Normal::new(m2, s2).unwrap(), 99).unwrap();
    assert_eq!(curve.len(), 99);
    for q in curve.points() {
        assert!(((q.qx - m1) / s1 - (q.qy - m2) / s2).abs() < 1e-10, "{q:?}");
    }
}

#[test]
fn affine_samples_give_affine_qq() {
    let x = normal_draws(&mut Rng::new(8), 0.0, 1.0, 300).unwrap();
    let y = SampleSet::new(x.values().iter().map(|v| 2.5 * v - 1.0).collect()).unwrap();
    let curve = qq_curve(&x, &y, 50).unwrap();
    for q in curve.points() {
        assert!((q.qy - (2.5 * q.qx - 1.0)).abs() < 1e-10);
    }
}

#[test]
fn exponential_samples_qq_slope() {
    let mut rng = Rng::new(65);
    let x = exponential_draws(&mut rng, 2.0, 500).unwrap();
    let y = exponential_draws(&mut rng, 2.0, 500).unwrap();
    let fit = qq_curve(&x, &y, 500).unwrap().middle_fit();
    let slope = fit.slope.unwrap();
    assert!((0.85..=1.15).contains(&slope), "slope {slope}");
}

#[test]
fn exponential_quantile_against_closed_form() {
    for p in [0.0, 0.25, 0.5, 0.75, 0.9] {
        let q = exponential_quantile(2.0, p).unwrap();
        assert!((q - (-(1.0 - p as f64).ln() / 2.0)).abs() < 1e-12);
    }
}

#[test]
fn normal_probability_plot_recovers_scale() {
    for (mu, sigma, seed) in [(0.0, 1.0, 1u64), (10.0, 3.0, 2), (-4.0, 0.25, 3)] {
        let s = normal_draws(&mut Rng::new(seed), mu, sigma, 500).unwrap();
        let fit = normal_probability_plot(&s).unwrap().middle_fit();
        let slope = fit.slope.unwrap();
        assert!((slope / sigma - 1.0).abs() < 0.1, "slope {slope} for sd {sigma}");
        assert!(fit.r_squared.unwrap() > 0.98);
    }
}

#[test]
fn constant_sample_plot_is_flagged() {
    let s = SampleSet::new(vec![4.0; 20]).unwrap();
    let curve = normal_probability_plot(&s).unwrap();
    assert!(curve.points().iter().all(|q| q.qy == 4.0));
    assert_eq!(curve.middle_fit().r_squared, None);
    assert!(normal_probability_plot(&SampleSet::new(vec![1.0]).unwrap()).is_err());
}

fn trapezoid(values: &[f64], step: f64) -> f64 {
    let inner: f64 = values[1..values.len() - 1].iter().sum();
    step * (inner + 0.5 * (values[0] + values[values.len() - 1]))
}

fn padded_grid(s: &SampleSet, sigma: f64, step: f64) -> GridAxis {
    let sorted = s.sorted();
    GridAxis::from_range(sorted[0] - 8.0 * sigma, step, sorted[sorted.len() - 1] + 8.0 * sigma).unwrap()
}

#[test]
fn kde_integrates_to_one() {
    for (n, seed) in [(1usize, 11u64), (10, 12), (200, 13)] {
        let s = normal_draws(&mut Rng::new(seed), 0.0, 2.0, n).unwrap();
        for sigma in [0.5, 1.0] {
            let grid = padded_grid(&s, sigma, sigma / 20.0);
            let density = kde_1d(&s, sigma, grid).unwrap();
            let total = trapezoid(density.values(), grid.step);
            assert!((0.999..=1.001).contains(&total), "n={n} sigma={sigma}: {total}");
        }
    }
}

#[test]
fn kde_is_smoothed_dirac_train() {
    let sigma = 1.0;
    let h = sigma / 50.0;
    let s = normal_draws(&mut Rng::new(21), 0.0, 1.5, 200).unwrap();
    let grid = padded_grid(&s, sigma, h);
    let mut train = vec![0.0; grid.count];
    for &v in s.values() {
        let bin = ((v - grid.min) / h).round() as usize;
        train[bin] += 1.0 / (s.len() as f64 * h);
    }
    let train = Field::new(vec![grid.count], vec![h], train).unwrap();
    let kernel = gaussian_kernel_1d(sigma, (8.0 * sigma / h).ceil() as usize, h).unwrap();
    let binned = convolve_axis(&train, &kernel, 0, BoundaryMode::ZeroPad).unwrap();
    let exact = kde_1d(&s, sigma, grid).unwrap();
    let peak = exact.values().iter().cloned().fold(0.0, f64::max);
    let err = exact.max_abs_diff(&binned);
    assert!(err < 1e-3 * peak, "error {err} vs peak {peak}");
}

#[test]
fn sample_quantile_is_quantile_function() {
    let s = SampleSet::new(vec![40.0, 10.0, 30.0, 20.0]).unwrap();
    assert_eq!(s.quantile(0.5).unwrap(), 25.0);
    assert_eq!(s.quantile(0.125).unwrap(), 10.0);
    assert_eq!(s.quantile(0.99).unwrap(), 40.0);
}
