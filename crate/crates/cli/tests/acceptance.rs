//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Run with `cargo test -p gksmooth-cli --test acceptance`.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gks_cli::{csvio, gridfile, pnm};
use gksmooth::sim::{
    experiment_1d, experiment_2d, experiment_gaussianness, exponential_draws, normal_draws,
    normal_field, GaussiannessParams, OneDParams, Rng, TwoDParams,
};
use gksmooth::stats::{
    empirical_cdf, exponential_quantile, kde_1d, normal_probability_plot, qq_curve, GridAxis, Normal,
};
use gksmooth::{
    convolve_dense, default_radius, edge_efwhm, field_efwhm, fwhm_to_sigma, normalize_residuals,
    separable_kernel, smooth, BoundaryMode, EfwhmOptions, Field, ResidualEnsemble,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

const SIGMA_HALF: [[f64; 5]; 5] = [
    [0.0000, 0.0000, 0.0002, 0.0000, 0.0000],
    [0.0000, 0.0113, 0.0837, 0.0113, 0.0000],
    [0.0002, 0.0837, 0.6187, 0.0837, 0.0002],
    [0.0000, 0.0113, 0.0837, 0.0113, 0.0000],
    [0.0000, 0.0000, 0.0002, 0.0000, 0.0000],
];

const SIGMA_ONE: [[f64; 5]; 5] = [
    [0.0030, 0.0133, 0.0219, 0.0133, 0.0030],
    [0.0133, 0.0596, 0.0983, 0.0596, 0.0133],
    [0.0219, 0.0983, 0.1621, 0.0983, 0.0219],
    [0.0133, 0.0596, 0.0983, 0.0596, 0.0133],
    [0.0030, 0.0133, 0.0219, 0.0133, 0.0030],
];

fn golden_kernels() -> Outcome {
    let mut worst: f64 = 0.0;
    for (sigma, printed) in [(0.5, &SIGMA_HALF), (1.0, &SIGMA_ONE)] {
        let dense = separable_kernel(sigma, 2, 2, &[1.0, 1.0]).map_err(|e| e.to_string())?.dense();
        for r in 0..5 {
            for c in 0..5 {
                worst = worst.max((dense[5 * r + c] - printed[r][c]).abs());
            }
        }
    }
    check(worst <= 5e-5, format!("max entry error {worst:.2e} (tol 5e-5)"))
}

fn separability() -> Outcome {
    let sigmas = [0.5, 1.3, 2.0];
    let mut worst: f64 = 0.0;
    for i in 0..50u64 {
        let mut rng = Rng::new(10_000 + i);
        let rank = 1 + (i % 3) as usize;
        let sigma = sigmas[((i / 3) % 3) as usize];
        let dims: Vec<usize> = (0..rank).map(|_| 2 + (rng.uniform() * 15.0) as usize).collect();
        let n = dims.iter().product();
        let f = Field::from_values(dims, (0..n).map(|_| rng.uniform()).collect()).unwrap();
        let k = separable_kernel(sigma, default_radius(sigma, 1.0), rank, &vec![1.0; rank]).unwrap();
        for mode in BoundaryMode::ALL {
            let a = smooth(&f, &k, mode).map_err(|e| e.to_string())?;
            let b = convolve_dense(&f, &k, mode).map_err(|e| e.to_string())?;
            worst = worst.max(a.max_abs_diff(&b));
        }
    }
    check(worst < 1e-12, format!("50 fields x 3 modes, max |smooth - dense| {worst:.2e} (tol 1e-12)"))
}

fn dirac_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for (dims, sigma, radius) in [(vec![15], 1.7, 5), (vec![13, 11], 1.0, 2), (vec![9, 9, 9], 0.9, 3)] {
        let rank = dims.len();
        let center: Vec<usize> = dims.iter().map(|d| d / 2).collect();
        let k = separable_kernel(sigma, radius, rank, &vec![1.0; rank]).unwrap();
        let out = smooth(&Field::impulse(dims, &center).unwrap(), &k, BoundaryMode::ZeroPad).unwrap();
        let kd = Field::zeros(k.dense_dims()).unwrap();
        for (i, w) in k.dense().iter().enumerate() {
            let idx: Vec<usize> = kd.multi_index(i).iter().zip(&center).map(|(o, c)| c + o - radius).collect();
            worst = worst.max((out.get(&idx).unwrap() - w).abs());
        }
    }
    check(worst < 1e-12, format!("ranks 1-3, max |K*delta - K| {worst:.2e} (tol 1e-12)"))
}

fn efwhm_recovery() -> Outcome {
    let master = Rng::new(2024);
    let mut medians = Vec::new();
    let mut notes = Vec::new();
    for fwhm in [4.0, 8.0] {
        let sigma = fwhm_to_sigma(fwhm).unwrap();
        let radius = default_radius(sigma, 1.0);
        let k = separable_kernel(sigma, radius, 2, &[1.0, 1.0]).unwrap();
        let images = (0..64u64)
            .map(|i| smooth(&normal_field(&mut master.child(i), vec![64, 64], 1.0).unwrap(), &k, BoundaryMode::ZeroPad))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let ens = ResidualEnsemble::new(images).map_err(|e| e.to_string())?;
        let opts = EfwhmOptions { margin: radius, ..Default::default() };
        let median = field_efwhm(&ens, opts).map_err(|e| e.to_string())?.median.ok_or("no finite edges")?;
        notes.push(format!("FWHM {fwhm}: median {median:.3} ({:+.1}%)", 100.0 * (median / fwhm - 1.0)));
        medians.push((fwhm, median));
    }
    let within = medians.iter().all(|&(f, m)| (m / f - 1.0).abs() < 0.15);
    check(within && medians[1].1 > medians[0].1, notes.join(", ") + " (tol 15%, increasing)")
}

fn hand_check_efwhm() -> Outcome {
    let ens = ResidualEnsemble::new(vec![
        Field::from_values(vec![2], vec![0.6, 0.0]).unwrap(),
        Field::from_values(vec![2], vec![0.8, 1.0]).unwrap(),
    ])
    .unwrap();
    let est = edge_efwhm(&normalize_residuals(&ens).unwrap(), &[0], &[1], 1.0).map_err(|e| e.to_string())?;
    check(
        (est.efwhm - 2.63278).abs() <= 1e-4,
        format!("eFWHM {:.6} (expected 2.63278 +- 1e-4)", est.efwhm),
    )
}

fn gaussian_qq() -> Outcome {
    let (m1, s1, m2, s2) = (1.0, 2.0, -3.0, 0.5);
    let curve = qq_curve(&Normal::new(m1, s1).unwrap(), &Normal::new(m2, s2).unwrap(), 99).unwrap();
    let worst = curve
        .points()
        .iter()
        .map(|q| ((q.qx - m1) / s1 - (q.qy - m2) / s2).abs())
        .fold(0.0, f64::max);
    let sample = normal_draws(&mut Rng::new(42), 0.0, 1.0, 500).unwrap();
    let r2 = normal_probability_plot(&sample).unwrap().middle_fit().r_squared.unwrap_or(0.0);
    check(
        curve.len() == 99 && worst < 1e-10 && r2 > 0.98,
        format!("line residual {worst:.2e} over {} p (tol 1e-10), sample R^2 {r2:.4} (> 0.98)", curve.len()),
    )
}

fn exponential_quantiles() -> Outcome {
    let ps = [0.0, 0.25, 0.5, 0.75, 0.9];
    let draws = exponential_draws(&mut Rng::new(42), 2.0, 100_000).unwrap();
    let (mut formula, mut ecdf): (f64, f64) = (0.0, 0.0);
    for p in ps {
        let q = exponential_quantile(2.0, p).map_err(|e| e.to_string())?;
        formula = formula.max((q - (-(1.0 - p as f64).ln() / 2.0)).abs());
        ecdf = ecdf.max((empirical_cdf(&draws, q) - p).abs());
    }
    check(
        formula <= 1e-12 && ecdf <= 0.01,
        format!("formula error {formula:.2e} (tol 1e-12), ECDF error {ecdf:.4} (tol 0.01)"),
    )
}

fn signal_recovery() -> Outcome {
    let mut wins = [0, 0];
    for seed in 0..20u64 {
        let r = experiment_1d(&mut Rng::new(seed), &OneDParams::default()).map_err(|e| e.to_string())?;
        wins[0] += (r.get_metric("rmse_smoothed") < r.get_metric("rmse_noisy")) as usize;
        let r = experiment_2d(&mut Rng::new(seed), &TwoDParams::default()).map_err(|e| e.to_string())?;
        wins[1] += (r.get_metric("rmse_smoothed") < r.get_metric("rmse_noisy")) as usize;
    }
    check(
        wins[0] >= 19 && wins[1] >= 19,
        format!("1-D {}/20, 2-D {}/20 seeds improved (need 19)", wins[0], wins[1]),
    )
}

fn gaussianness() -> Outcome {
    let r = experiment_gaussianness(&mut Rng::new(42), &GaussiannessParams::default()).map_err(|e| e.to_string())?;
    let m = |k: &str| r.get_metric(k).unwrap();
    let (ratio, expected) = (m("variance_ratio"), m("expected_variance_ratio"));
    let (r2_raw, r2_smooth) = (m("r2_raw"), m("r2_smoothed"));
    let rel = ratio / expected - 1.0;
    check(
        rel.abs() <= 0.2 && r2_smooth >= r2_raw,
        format!(
            "seed 42: variance ratio {ratio:.5} vs {expected:.5} ({:+.1}%, tol 20%), R^2 smoothed {r2_smooth:.4} vs raw {r2_raw:.4}",
            100.0 * rel
        ),
    )
}

fn kde_normalization() -> Outcome {
    let mut worst: f64 = 0.0;
    for (n, seed) in [(1usize, 101u64), (10, 102), (200, 103)] {
        let s = normal_draws(&mut Rng::new(seed), 0.0, 1.0, n).unwrap();
        let (lo, hi) = (s.sorted()[0], s.sorted()[n - 1]);
        for sigma in [0.5, 1.0] {
            let step = sigma / 20.0;
            let grid = GridAxis::from_range(lo - 8.0 * sigma, step, hi + 8.0 * sigma).unwrap();
            let d = kde_1d(&s, sigma, grid).map_err(|e| e.to_string())?;
            let v = d.values();
            let integral = step * (v.iter().sum::<f64>() - 0.5 * (v[0] + v[v.len() - 1]));
            worst = worst.max((integral - 1.0).abs());
        }
    }
    let single = gksmooth::stats::SampleSet::new(vec![0.0]).unwrap();
    let peak = kde_1d(&single, 1.0, GridAxis::new(0.0, 1.0, 1).unwrap()).unwrap().values()[0];
    let peak_err = (peak - 1.0 / (2.0 * std::f64::consts::PI).sqrt()).abs();
    check(
        worst <= 1e-3 && peak_err <= 1e-9,
        format!("max |integral - 1| {worst:.2e} (tol 1e-3), peak error {peak_err:.2e} (tol 1e-9)"),
    )
}

fn dir_snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    out.sort();
    out
}

fn determinism_and_formats() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for experiment in ["1d", "2d", "key", "gaussianness"] {
        let mut snapshots = Vec::new();
        for run in 0..2 {
            let dir = tmp.path().join(format!("{experiment}_{run}"));
            let status = Command::new(env!("CARGO_BIN_EXE_gks"))
                .args(["simulate", "--experiment", experiment, "--seed", "7", "--out-dir"])
                .arg(&dir)
                .output()
                .map_err(|e| e.to_string())?;
            if !status.status.success() {
                return Err(format!("simulate {experiment} failed: {}", String::from_utf8_lossy(&status.stderr)));
            }
            snapshots.push(dir_snapshot(&dir));
        }
        if snapshots[0] != snapshots[1] || snapshots[0].is_empty() {
            return Err(format!("simulate --experiment {experiment} --seed 7 differs between runs"));
        }
        notes.push(format!("{experiment}: {} files", snapshots[0].len()));
    }

    let mut rng = Rng::new(77);
    let f = Field::new(
        vec![5, 4, 3],
        vec![0.5, 1.0, 2.5],
        (0..60).map(|_| rng.normal(0.0, 1e3)).collect(),
    )
    .unwrap();
    let back = gridfile::decode(&gridfile::encode(&f).unwrap()).map_err(|e| e.to_string())?;
    let grid_ok = back.dims() == f.dims()
        && back.spacing() == f.spacing()
        && back.values().iter().zip(f.values()).all(|(b, a)| *b == *a as f32 as f64);

    let mut pnm_ok = true;
    for maxval in [255u16, 65535] {
        let samples: Vec<u16> = (0..7 * 5).map(|_| (rng.uniform() * (maxval as f64 + 1.0)) as u16).collect();
        let img = pnm::Image::new(7, 5, 1, maxval, samples).unwrap();
        for enc in [pnm::Encoding::Ascii, pnm::Encoding::Binary] {
            let decoded = pnm::decode(&img.encode(enc)).map_err(|e| e.to_string())?;
            pnm_ok &= decoded == img;
            pnm_ok &= pnm::Image::from_field(&decoded.channel(0), maxval).unwrap() == img;
        }
    }

    let values: Vec<f64> = (0..500)
        .map(|i| match i % 4 {
            0 => rng.normal(0.0, 1.0),
            1 => f64::from_bits(rng.next_u64() >> 2),
            2 => rng.uniform() * 1e-300,
            _ => -rng.uniform() * 1e300,
        })
        .collect();
    let rows: Vec<Vec<f64>> = values.iter().map(|&v| vec![v]).collect();
    let parsed = csvio::read_samples(&csvio::write_table(&["v".to_string()], &rows)).map_err(|e| e.to_string())?;
    let csv_ok = parsed.len() == values.len() && parsed.iter().zip(&values).all(|(a, b)| a.to_bits() == b.to_bits());

    notes.push(format!("GridFile {grid_ok}, PGM {pnm_ok}, CSV {csv_ok}"));
    check(grid_ok && pnm_ok && csv_ok, notes.join("; "))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // libtest-style flags (e.g. --nocapture) are accepted and ignored.
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "golden kernel matrices", budget: secs(1), run: golden_kernels },
        Criterion { id: 2, name: "separability oracle", budget: secs(10), run: separability },
        Criterion { id: 3, name: "Dirac identity", budget: secs(1), run: dirac_identity },
        Criterion { id: 4, name: "effective-FWHM recovery", budget: secs(30), run: efwhm_recovery },
        Criterion { id: 5, name: "hand-checked eFWHM", budget: secs(1), run: hand_check_efwhm },
        Criterion { id: 6, name: "QQ linearity of Gaussians", budget: secs(1), run: gaussian_qq },
        Criterion { id: 7, name: "exponential quantile", budget: secs(2), run: exponential_quantiles },
        Criterion { id: 8, name: "signal recovery", budget: secs(10), run: signal_recovery },
        Criterion { id: 9, name: "Gaussianness increase", budget: secs(30), run: gaussianness },
        Criterion { id: 10, name: "KDE normalization", budget: secs(1), run: kde_normalization },
        Criterion { id: 11, name: "determinism and formats", budget: secs(10), run: determinism_and_formats },
    ];

    let mut failed = 0;
    let mut ran = 0;
    for c in &criteria {
        if filter.as_deref().is_some_and(|f| !c.name.contains(f) && f != c.id.to_string()) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {:?} budget", c.budget)),
            Err(d) => (false, d),
        };
        failed += !pass as usize;
        println!(
            "{} [{:>2}] {}: {} ({:.2?})",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            elapsed
        );
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
