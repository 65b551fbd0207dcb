//! Bare polyline plots. Each series becomes one `<polyline>`; coordinates
//! are mapped linearly from the data bounding box onto the canvas.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const PAD: f64 = 20.0;

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

pub fn polylines(series: &[Series]) -> String {
    let all = series.iter().flat_map(|s| s.points.iter()).filter(|(x, y)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let sx = if x1 > x0 { (WIDTH - 2.0 * PAD) / (x1 - x0) } else { 0.0 };
    let sy = if y1 > y0 { (HEIGHT - 2.0 * PAD) / (y1 - y0) } else { 0.0 };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    for s in series {
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| {
                let px = PAD + (x - x0) * sx;
                let py = HEIGHT - PAD - (y - y0) * sy;
                format!("{px:.3},{py:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline data-series="{}" fill="none" stroke="black" points="{}"/>"#,
            escape(s.name),
            pts.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;")
}
