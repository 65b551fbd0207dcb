use gksmooth::sim::{
    experiment_1d, experiment_2d, experiment_gaussianness, experiment_key, key_image, normal_field,
    GaussiannessParams, KeyParams, OneDParams, Rng, TwoDParams,
};
use gksmooth::stats::SampleSet;
use gksmooth::{scale_space, separable_kernel, smooth, BoundaryMode, RadiusRule};

const SEED_SUITE: std::ops::Range<u64> = 0..20;

#[test]
fn one_d_recovery_over_seed_suite() {
    let wins = SEED_SUITE
        .filter(|&s| {
            let r = experiment_1d(&mut Rng::new(s), &OneDParams::default()).unwrap();
            r.get_metric("rmse_smoothed").unwrap() < r.get_metric("rmse_noisy").unwrap()
        })
        .count();
    assert!(wins >= 19, "{wins}/20");
}

#[test]
fn two_d_recovery_over_seed_suite() {
    let wins = SEED_SUITE
        .filter(|&s| {
            let r = experiment_2d(&mut Rng::new(s), &TwoDParams::default()).unwrap();
            r.get_metric("rmse_smoothed").unwrap() < r.get_metric("rmse_noisy").unwrap()
        })
        .count();
    assert!(wins >= 19, "{wins}/20");
}

#[test]
fn key_rmse_ordering() {
    for seed in [7u64, 42, 1000] {
        let r = experiment_key(&mut Rng::new(seed), &KeyParams::default()).unwrap();
        let raw = r.get_metric("rmse_raw").unwrap();
        let fine = r.get_metric("rmse_sigma_1").unwrap();
        let coarse = r.get_metric("rmse_sigma_10").unwrap();
        assert!(coarse < fine && fine < raw, "seed {seed}: {coarse} {fine} {raw}");
    }
}

#[test]
fn key_scale_space_coarse_level_is_closer() {
    let noisy = experiment_key(&mut Rng::new(7), &KeyParams::default())
        .unwrap()
        .field("noisy")
        .unwrap()
        .clone();
    let levels = scale_space(&noisy, &[1.0, 10.0], RadiusRule::Fixed(10), BoundaryMode::ZeroPad).unwrap();
    let clean = key_image();
    assert!(levels[1].rmse(&clean).unwrap() < levels[0].rmse(&clean).unwrap());
}

#[test]
fn nine_tap_window_error_is_bounded_by_tail_mass() {
    // Mass of the normalized 21-tap sigma=1 kernel beyond |k| = 4, per axis
    // and then for the 2-D product.
    let g = |k: i32| (-0.5 * (k * k) as f64).exp();
    let total: f64 = (-10..=10).map(g).sum();
    let tail_1d: f64 = (-10..=10).filter(|k: &i32| k.abs() > 4).map(g).sum::<f64>() / total;
    let tail_2d = 1.0 - (1.0 - tail_1d) * (1.0 - tail_1d);

    let noisy = experiment_key(&mut Rng::new(7), &KeyParams::default())
        .unwrap()
        .field("noisy")
        .unwrap()
        .clone();
    let wide = separable_kernel(1.0, 10, 2, &[1.0, 1.0]).unwrap();
    let narrow = separable_kernel(1.0, 4, 2, &[1.0, 1.0]).unwrap();
    for f in [key_image(), noisy] {
        let a = smooth(&f, &wide, BoundaryMode::ZeroPad).unwrap();
        let b = smooth(&f, &narrow, BoundaryMode::ZeroPad).unwrap();
        let max_abs = f.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let diff = a.max_abs_diff(&b);
        assert!(diff <= 2.0 * tail_2d * max_abs, "{diff} vs {tail_2d}");
    }
}

#[test]
fn gaussianness_fixed_seed() {
    let r = experiment_gaussianness(&mut Rng::new(42), &GaussiannessParams::default()).unwrap();
    let ratio = r.get_metric("variance_ratio").unwrap();
    let expected = r.get_metric("expected_variance_ratio").unwrap();
    assert!((ratio / expected - 1.0).abs() <= 0.2, "{ratio} vs {expected}");
    assert!(r.get_metric("r2_smoothed").unwrap() >= r.get_metric("r2_raw").unwrap());
}

#[test]
fn gaussianness_needs_two_reps() {
    let params = GaussiannessParams { reps: 1, ..Default::default() };
    assert!(experiment_gaussianness(&mut Rng::new(1), &params).is_err());
}

#[test]
fn variance_law_at_2000_reps() {
    let tau = 5.0;
    let kernel = separable_kernel(100.0, 10, 2, &[1.0, 1.0]).unwrap();
    let expected: f64 = tau * tau * kernel.dense().iter().map(|w| w * w).sum::<f64>();
    let master = Rng::new(42);
    let values: Vec<f64> = (0..2000u64)
        .map(|i| {
            let patch = normal_field(&mut master.child(i), vec![21, 21], tau).unwrap();
            gksmooth::smooth_at(&patch, &kernel, BoundaryMode::ZeroPad, &[10, 10]).unwrap()
        })
        .collect();
    let var = SampleSet::new(values).unwrap().variance().unwrap();
    assert!((var / expected - 1.0).abs() <= 0.05, "{var} vs {expected}");
}

#[test]
fn experiments_are_deterministic() {
    let a = experiment_1d(&mut Rng::new(7), &OneDParams::default()).unwrap();
    let b = experiment_1d(&mut Rng::new(7), &OneDParams::default()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_key_value(), b.to_key_value());
    let params = GaussiannessParams { reps: 8, ..Default::default() };
    let a = experiment_gaussianness(&mut Rng::new(7), &params).unwrap();
    let b = experiment_gaussianness(&mut Rng::new(7), &params).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rng_matches_golden_file() {
    let golden = include_str!("golden/rng_seed42.txt");
    let (mut ints, mut unif, mut norm) = (Rng::new(42), Rng::new(42), Rng::new(42));
    let mut lines = 0;
    for line in golden.lines() {
        let (kind, value) = line.split_once(' ').unwrap();
        match kind {
            "u64" => assert_eq!(ints.next_u64(), value.parse::<u64>().unwrap()),
            "uniform" => assert_eq!(unif.uniform(), value.parse::<f64>().unwrap()),
            "normal" => assert_eq!(norm.standard_normal(), value.parse::<f64>().unwrap()),
            other => panic!("unknown golden entry {other}"),
        }
        lines += 1;
    }
    assert_eq!(lines, 30);
}
