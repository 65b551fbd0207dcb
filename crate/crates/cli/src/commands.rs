use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gksmooth::sim::{
    experiment_1d, experiment_2d, experiment_gaussianness, experiment_key, ExperimentReport,
    GaussiannessParams, KeyParams, OneDParams, Rng, TwoDParams,
};
use gksmooth::stats::{kde, qq_curve, Exponential, GridAxis, Normal, SampleSet};
use gksmooth::{
    field_efwhm, fwhm_to_sigma, scale_space, separable_kernel_for, smooth, BoundaryMode,
    EfwhmOptions, Field, RadiusRule, ResidualEnsemble,
};

use crate::csvio;
use crate::error::{CliError, CliResult};
use crate::files::{self, FieldFormat};
use crate::pnm::{binarize_first_channel, Encoding, Image};
use crate::svg::{self, Series};

#[derive(Debug, Parser)]
#[command(name = "gks", version, about = "Gaussian kernel smoothing tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Smooth a field with an isotropic Gaussian kernel.
    Smooth(SmoothArgs),
    /// Smooth at several bandwidths, one output file per level.
    Scalespace(ScaleSpaceArgs),
    /// Estimate effective FWHM from residual images.
    Efwhm(EfwhmArgs),
    /// Quantile-quantile curve of two distributions.
    Qq(QqArgs),
    /// Gaussian kernel density estimate on a regular grid.
    Kde(KdeArgs),
    /// First image channel scaled to [0, 1].
    Binarize(BinarizeArgs),
    /// Run a seeded simulation experiment.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Boundary {
    Zero,
    Reflect,
    Replicate,
}

impl From<Boundary> for BoundaryMode {
    fn from(b: Boundary) -> Self {
        match b {
            Boundary::Zero => BoundaryMode::ZeroPad,
            Boundary::Reflect => BoundaryMode::Reflect,
            Boundary::Replicate => BoundaryMode::Replicate,
        }
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("bandwidth").required(true).args(["sigma", "fwhm"])))]
pub struct SmoothArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub fwhm: Option<f64>,
    /// Kernel half-width in samples; default ceil(4 sigma / spacing).
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long, value_enum, default_value = "zero")]
    pub boundary: Boundary,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScaleSpaceArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Strictly ascending bandwidths.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sigmas: Vec<f64>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long, value_enum, default_value = "zero")]
    pub boundary: Boundary,
    /// Level `i` goes to `<prefix><i>.<ext>`.
    #[arg(long)]
    pub out_prefix: String,
    #[arg(long, value_enum, default_value = "gksf")]
    pub format: LevelFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelFormat {
    Gksf,
    Csv,
    Pgm,
}

#[derive(Debug, Args)]
pub struct EfwhmArgs {
    /// One field per residual image, or a single field whose first axis
    /// indexes the images.
    #[arg(long, num_args = 1.., required = true)]
    pub residuals: Vec<PathBuf>,
    /// Per-axis spacing overriding the files'.
    #[arg(long, value_delimiter = ',')]
    pub spacing: Option<Vec<f64>>,
    /// Edges closer than this to a border stay out of the summary; 0 keeps all.
    #[arg(long, default_value_t = 1)]
    pub margin: usize,
    /// Subtract the voxelwise mean first (inputs are raw observations).
    #[arg(long)]
    pub demean: bool,
    /// Per-edge CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Summary as a one-row CSV.
    #[arg(long)]
    pub summary: Option<PathBuf>,
}

/// `csv` path, `normal`, or `exp:RATE`.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Samples(PathBuf),
    Normal,
    Exponential(f64),
}

impl FromStr for Distribution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "normal" {
            return Ok(Distribution::Normal);
        }
        if let Some(rate) = s.strip_prefix("exp:") {
            let rate: f64 = rate.parse().map_err(|_| format!("bad exponential rate {rate:?}"))?;
            if !(rate.is_finite() && rate > 0.0) {
                return Err(format!("exponential rate must be positive, got {rate}"));
            }
            return Ok(Distribution::Exponential(rate));
        }
        Ok(Distribution::Samples(PathBuf::from(s)))
    }
}

#[derive(Debug, Args)]
pub struct QqArgs {
    #[arg(long)]
    pub x: PathBuf,
    #[arg(long)]
    pub y: Distribution,
    /// Number of probabilities `(j - 0.5) / N`; defaults to the size of `x`.
    #[arg(long)]
    pub points: Option<usize>,
    /// `.csv` or `.svg`.
    #[arg(long)]
    pub out: PathBuf,
}

/// `MIN:STEP:MAX`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec(pub GridAxis);

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, step, max] = parts.as_slice() else {
            return Err(format!("grid {s:?} is not MIN:STEP:MAX"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("bad number {t:?} in grid {s:?}"));
        GridAxis::from_range(num(min)?, num(step)?, num(max)?)
            .map(GridSpec)
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Args)]
pub struct KdeArgs {
    /// One point per row; one column per dimension.
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub sigma: f64,
    /// Once for all axes or once per axis.
    #[arg(long, required = true, allow_hyphen_values = true)]
    pub grid: Vec<GridSpec>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BinarizeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    #[value(name = "1d")]
    OneD,
    #[value(name = "2d")]
    TwoD,
    Key,
    Gaussianness,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    #[arg(long, env = "GKS_SEED")]
    pub seed: Option<u64>,
    /// Bandwidth (1d, 2d, gaussianness).
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Bandwidths for the key experiment.
    #[arg(long, value_delimiter = ',')]
    pub sigmas: Option<Vec<f64>>,
    #[arg(long)]
    pub noise_sd: Option<f64>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub reps: Option<usize>,
    /// One-based `ROW,COL` (gaussianness).
    #[arg(long, value_delimiter = ',')]
    pub pixel: Option<Vec<usize>>,
    #[arg(long)]
    pub out_dir: PathBuf,
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Smooth(a) => run_smooth(a),
        Command::Scalespace(a) => run_scale_space(a),
        Command::Efwhm(a) => run_efwhm(a),
        Command::Qq(a) => run_qq(a),
        Command::Kde(a) => run_kde(a),
        Command::Binarize(a) => run_binarize(a),
        Command::Simulate(a) => run_simulate(a),
    }
}

fn radius_rule(radius: Option<usize>) -> RadiusRule {
    radius.map_or(RadiusRule::Auto, RadiusRule::Fixed)
}

fn run_smooth(a: SmoothArgs) -> CliResult<()> {
    let field = files::load_field(&a.input)?;
    let sigma = match (a.sigma, a.fwhm) {
        (Some(s), None) => s,
        (None, Some(f)) => {
            if !(f.is_finite() && f > 0.0) {
                return Err(gksmooth::Error::InvalidFwhm(f).into());
            }
            fwhm_to_sigma(f)?
        }
        _ => return Err(CliError::Usage("give exactly one of --sigma and --fwhm".into())),
    };
    let kernel = separable_kernel_for(sigma, radius_rule(a.radius), field.spacing())?;
    let out = smooth(&field, &kernel, a.boundary.into())?;
    files::save_field(&a.out, &out)
}

fn run_scale_space(a: ScaleSpaceArgs) -> CliResult<()> {
    let field = files::load_field(&a.input)?;
    let levels = scale_space(&field, &a.sigmas, radius_rule(a.radius), a.boundary.into())?;
    let ext = match a.format {
        LevelFormat::Gksf => FieldFormat::Grid,
        LevelFormat::Csv => FieldFormat::Csv,
        LevelFormat::Pgm => FieldFormat::Pnm,
    }
    .extension();
    for (i, level) in levels.iter().enumerate() {
        let path = PathBuf::from(format!("{}{i}.{ext}", a.out_prefix));
        files::save_field(&path, level)?;
        println!("{}", path.display());
    }
    Ok(())
}

/// Splits a stack along axis 0 into separate images.
fn unstack(stack: Field) -> CliResult<Vec<Field>> {
    if stack.rank() < 2 {
        return Err(CliError::Usage(
            "a single residual file must be a stack with the image index on axis 0".into(),
        ));
    }
    let dims = stack.dims()[1..].to_vec();
    let spacing = stack.spacing()[1..].to_vec();
    let per = stack.len() / stack.dims()[0];
    stack
        .values()
        .chunks(per)
        .map(|chunk| Field::new(dims.clone(), spacing.clone(), chunk.to_vec()).map_err(CliError::from))
        .collect()
}

fn run_efwhm(a: EfwhmArgs) -> CliResult<()> {
    let mut images = if a.residuals.len() == 1 {
        unstack(files::load_field(&a.residuals[0])?)?
    } else {
        a.residuals.iter().map(|p| files::load_field(p)).collect::<CliResult<Vec<_>>>()?
    };
    if let Some(spacing) = &a.spacing {
        images = images
            .into_iter()
            .map(|f| f.with_spacing(spacing.clone()))
            .collect::<gksmooth::Result<Vec<_>>>()?;
    }
    let ens = if a.demean {
        ResidualEnsemble::from_observations(images)?
    } else {
        ResidualEnsemble::new(images)?
    };
    let opts = EfwhmOptions {
        margin: a.margin,
        ..Default::default()
    };
    let summary = field_efwhm(&ens, opts)?;

    let columns: Vec<String> = ["a", "b", "axis", "delta_u", "lambda", "efwhm"].map(String::from).to_vec();
    let rows: Vec<Vec<f64>> = summary
        .edges
        .iter()
        .map(|e| vec![e.edge.a as f64, e.edge.b as f64, e.edge.axis as f64, e.delta_u, e.lambda, e.efwhm])
        .collect();
    files::write_bytes(&a.out, &csvio::write_table(&columns, &rows))?;

    let nan = f64::NAN;
    let values = [
        ("edges", summary.edges.len() as f64),
        ("included", summary.included as f64),
        ("infinite", summary.infinite as f64),
        ("median_efwhm", summary.median.unwrap_or(nan)),
        ("rms_lambda_efwhm", summary.rms_lambda_fwhm.unwrap_or(nan)),
    ];
    for (k, v) in values {
        println!("{k}={v}");
    }
    if let Some(path) = &a.summary {
        let columns: Vec<String> = values.iter().map(|(k, _)| k.to_string()).collect();
        let row = values.iter().map(|(_, v)| *v).collect();
        files::write_bytes(path, &csvio::write_table(&columns, &[row]))?;
    }
    Ok(())
}

fn read_sample_set(path: &Path) -> CliResult<SampleSet> {
    let bytes = files::read_bytes(path)?;
    let values = csvio::read_samples(&bytes).map_err(|e| CliError::malformed(path, e))?;
    Ok(SampleSet::new(values)?)
}

fn run_qq(a: QqArgs) -> CliResult<()> {
    let x = read_sample_set(&a.x)?;
    let n = a.points.unwrap_or(x.len()).max(2);
    let curve = match &a.y {
        Distribution::Samples(p) => qq_curve(&x, &read_sample_set(p)?, n)?,
        Distribution::Normal => qq_curve(&x, &Normal::STANDARD, n)?,
        Distribution::Exponential(rate) => qq_curve(&x, &Exponential::new(*rate)?, n)?,
    };
    let points: Vec<(f64, f64)> = curve.points().iter().map(|q| (q.qx, q.qy)).collect();
    let bytes = match a.out.extension().and_then(|e| e.to_str()) {
        Some("svg") => svg::polylines(&[Series { name: "qq", points }]).into_bytes(),
        Some("csv") => {
            let rows: Vec<Vec<f64>> = curve.points().iter().map(|q| vec![q.p, q.qx, q.qy]).collect();
            csvio::write_table(&["p", "qx", "qy"].map(String::from), &rows)
        }
        _ => return Err(CliError::Usage(format!("{}: expected .csv or .svg", a.out.display()))),
    };
    files::write_bytes(&a.out, &bytes)?;
    let fit = curve.middle_fit();
    let show = |v: Option<f64>| v.map_or("undefined".to_string(), |v| v.to_string());
    println!("slope={}", show(fit.slope));
    println!("intercept={}", show(fit.intercept));
    println!("r_squared={}", show(fit.r_squared));
    Ok(())
}

fn run_kde(a: KdeArgs) -> CliResult<()> {
    let bytes = files::read_bytes(&a.points)?;
    let (_, points) = csvio::read_table(&bytes).map_err(|e| CliError::malformed(&a.points, e))?;
    let d = points.first().map_or(0, Vec::len);
    let grid: Vec<GridAxis> = match a.grid.len() {
        1 => vec![a.grid[0].0; d],
        n if n == d => a.grid.iter().map(|g| g.0).collect(),
        n => return Err(CliError::Usage(format!("{n} --grid values for {d}-dimensional points"))),
    };
    let density = kde(&points, a.sigma, &grid)?;
    let mut columns: Vec<String> = if d == 1 { vec!["x".into()] } else { (0..d).map(|k| format!("x{k}")).collect() };
    columns.push("density".into());
    let rows: Vec<Vec<f64>> = (0..density.len())
        .map(|flat| {
            let idx = density.multi_index(flat);
            let mut row: Vec<f64> = idx.iter().zip(&grid).map(|(&i, g)| g.node(i)).collect();
            row.push(density.values()[flat]);
            row
        })
        .collect();
    files::write_bytes(&a.out, &csvio::write_table(&columns, &rows))
}

fn run_binarize(a: BinarizeArgs) -> CliResult<()> {
    let img = files::read_image(&a.input)?;
    files::save_field(&a.out, &binarize_first_channel(&img))
}

fn report_for(a: &SimulateArgs) -> CliResult<ExperimentReport> {
    let seed = a
        .seed
        .ok_or_else(|| CliError::Usage("no seed: pass --seed or set GKS_SEED".into()))?;
    let mut rng = Rng::new(seed);
    let report = match a.experiment {
        Experiment::OneD => {
            let d = OneDParams::default();
            let p = OneDParams {
                bandwidth: a.sigma.unwrap_or(d.bandwidth),
                noise_sd: a.noise_sd.unwrap_or(d.noise_sd),
                radius: a.radius.unwrap_or(d.radius),
            };
            experiment_1d(&mut rng, &p)?
        }
        Experiment::TwoD => {
            let d = TwoDParams::default();
            let p = TwoDParams {
                bandwidth: a.sigma.unwrap_or(d.bandwidth),
                noise_sd: a.noise_sd.unwrap_or(d.noise_sd),
                radius: a.radius.unwrap_or(d.radius),
            };
            experiment_2d(&mut rng, &p)?
        }
        Experiment::Key => {
            let d = KeyParams::default();
            let p = KeyParams {
                sigmas: a.sigmas.clone().unwrap_or(d.sigmas),
                noise_sd: a.noise_sd.unwrap_or(d.noise_sd),
                radius: a.radius.unwrap_or(d.radius),
            };
            experiment_key(&mut rng, &p)?
        }
        Experiment::Gaussianness => {
            let d = GaussiannessParams::default();
            let pixel = match a.pixel.as_deref() {
                None => d.pixel,
                Some(&[r, c]) if r >= 1 && c >= 1 => [r - 1, c - 1],
                Some(p) => return Err(CliError::Usage(format!("--pixel {p:?} is not a one-based ROW,COL"))),
            };
            let p = GaussiannessParams {
                reps: a.reps.unwrap_or(d.reps),
                sigma: a.sigma.unwrap_or(d.sigma),
                radius: a.radius.unwrap_or(d.radius),
                noise_sd: a.noise_sd.unwrap_or(d.noise_sd),
                pixel,
            };
            experiment_gaussianness(&mut rng, &p)?
        }
    };
    Ok(report)
}

fn run_simulate(a: SimulateArgs) -> CliResult<()> {
    let mut report = report_for(&a)?;
    write_report(&mut report, &a.out_dir)?;
    print!("{}", report.to_key_value());
    Ok(())
}

/// Writes every table as CSV and SVG, every field as GKSF (plus a PGM
/// preview for 2-D fields), then `report.txt` listing them.
pub fn write_report(report: &mut ExperimentReport, dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut artifacts = Vec::new();
    for table in &report.tables {
        let name = format!("{}.csv", table.name);
        files::write_bytes(&dir.join(&name), &csvio::write_table(&table.columns, &table.rows))?;
        artifacts.push(name);

        // A probability column is a parameter, not a plot axis.
        let axes: Vec<&String> = table.columns.iter().filter(|c| c.as_str() != "p").collect();
        let x = table.column(axes[0]).unwrap_or_default();
        let series: Vec<Series> = axes[1..]
            .iter()
            .map(|c| Series {
                name: c,
                points: x.iter().cloned().zip(table.column(c).unwrap_or_default()).collect(),
            })
            .collect();
        let name = format!("{}.svg", table.name);
        files::write_bytes(&dir.join(&name), svg::polylines(&series).as_bytes())?;
        artifacts.push(name);
    }
    for (name, field) in &report.fields {
        let grid = format!("{name}.gksf");
        files::save_field(&dir.join(&grid), field)?;
        artifacts.push(grid);
        if field.rank() == 2 {
            let pgm = format!("{name}.pgm");
            let img = Image::preview(field, u16::MAX).map_err(CliError::Usage)?;
            files::write_bytes(&dir.join(&pgm), &img.encode(Encoding::Binary))?;
            artifacts.push(pgm);
        }
    }
    artifacts.push("report.txt".into());
    report.artifacts = artifacts;
    let mut text = report.to_key_value();
    for table in &report.tables {
        let _ = writeln!(text, "table.{}.rows={}", table.name, table.rows.len());
    }
    files::write_bytes(&dir.join("report.txt"), text.as_bytes())
}
