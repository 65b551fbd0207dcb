use crate::error::{Error, Result};
use crate::stats::dist::{normal_quantile, QuantileFunction};
use crate::stats::sample::SampleSet;

/// Fraction of points dropped at each end before fitting a line.
pub const MIDDLE_TRIM: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QQPoint {
    pub p: f64,
    pub qx: f64,
    pub qy: f64,
}

/// Paired quantiles `(F_X^{-1}(p), F_Y^{-1}(p))` on an increasing `p` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QQCurve {
    points: Vec<QQPoint>,
}

/// Least-squares line `qy = slope * qx + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub points: usize,
    /// `None` when all `qx` coincide.
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    /// `None` when either coordinate is constant; such curves are flagged
    /// as degenerate rather than scored.
    pub r_squared: Option<f64>,
}

impl QQCurve {
    pub fn points(&self) -> &[QQPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Line fit over the points left after dropping `trim` of them at each
    /// end.
    pub fn fit_line(&self, trim: f64) -> LineFit {
        let n = self.points.len();
        let cut = ((trim * n as f64).floor() as usize).min(n.saturating_sub(2) / 2);
        let pts = &self.points[cut..n - cut];
        let m = pts.len() as f64;
        let mx = pts.iter().map(|q| q.qx).sum::<f64>() / m;
        let my = pts.iter().map(|q| q.qy).sum::<f64>() / m;
        let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
        for q in pts {
            let (dx, dy) = (q.qx - mx, q.qy - my);
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
        let slope = (sxx > 0.0).then(|| sxy / sxx);
        let r_squared = (sxx > 0.0 && syy > 0.0).then(|| (sxy * sxy) / (sxx * syy));
        LineFit {
            points: pts.len(),
            slope,
            intercept: slope.map(|b| my - b * mx),
            r_squared,
        }
    }

    /// [`QQCurve::fit_line`] on the middle 90% of points.
    pub fn middle_fit(&self) -> LineFit {
        self.fit_line(MIDDLE_TRIM)
    }
}

/// QQ curve on the grid `p_j = (j - 0.5) / n_points`.
pub fn qq_curve<X, Y>(x: &X, y: &Y, n_points: usize) -> Result<QQCurve>
where
    X: QuantileFunction + ?Sized,
    Y: QuantileFunction + ?Sized,
{
    if n_points < 2 {
        return Err(Error::InvalidParameter(format!(
            "QQ curve needs at least 2 points, got {n_points}"
        )));
    }
    let points = (1..=n_points)
        .map(|j| {
            let p = (j as f64 - 0.5) / n_points as f64;
            Ok(QQPoint {
                p,
                qx: x.quantile(p)?,
                qy: y.quantile(p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QQCurve { points })
}

/// Normal probability plot: standard normal quantiles against the order
/// statistics, at `p_j = (j - 0.5) / n`.
pub fn normal_probability_plot(s: &SampleSet) -> Result<QQCurve> {
    let n = s.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, found: n });
    }
    let points = s
        .sorted()
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let p = (j as f64 + 0.5) / n as f64;
            Ok(QQPoint {
                p,
                qx: normal_quantile(p)?,
                qy: x,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QQCurve { points })
}
