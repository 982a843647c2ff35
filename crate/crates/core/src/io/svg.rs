use std::fmt::Write as _;
use std::path::Path;

use crate::estimate::FitReport;
use crate::sim::SimDataset;

use super::DataError;

const SIZE: f64 = 640.0;
const MARGIN: f64 = 64.0;

/// Writes [`scatter_svg`] to `path`.
pub fn render_scatter_svg(
    data: &SimDataset,
    fit: &FitReport<f64>,
    path: impl AsRef<Path>,
) -> Result<(), DataError> {
    let path = path.as_ref();
    std::fs::write(path, scatter_svg(data, fit)).map_err(|e| DataError::io(path, e))
}

/// Predicted (x) against observed (y) win share, one circle per row, with the
/// 45° line. Both axes share one domain so the reference line is the diagonal.
pub fn scatter_svg(data: &SimDataset, fit: &FitReport<f64>) -> String {
    let points: Vec<(f64, f64)> = data
        .rows
        .iter()
        .map(|r| (fit.predict_win_pct(r), r.win_pct()))
        .collect();
    let (lo, hi) = domain(&points);
    let span = SIZE - 2.0 * MARGIN;
    let sx = |v: f64| MARGIN + (v - lo) / (hi - lo) * span;
    let sy = |v: f64| SIZE - MARGIN - (v - lo) / (hi - lo) * span;
    let (x0, x1, y0, y1) = (MARGIN, SIZE - MARGIN, SIZE - MARGIN, MARGIN);

    let mut s = String::with_capacity(200 + points.len() * 48);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        "<title>{} CSF: predicted vs observed win percentage ({} = {:.6})</title>",
        fit.form.title(),
        fit.form.parameter_name(),
        fit.parameter()
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path class="axis" d="M{x0:.2},{y1:.2} V{y0:.2} H{x1:.2}" fill="none" stroke="black"/>"#
    );

    let mut ticks = String::new();
    let mut labels = String::new();
    for i in 0..=5 {
        let v = lo + (hi - lo) * f64::from(i) / 5.0;
        let (px, py) = (sx(v), sy(v));
        let _ = write!(ticks, "M{px:.2},{y0:.2} v6 M{x0:.2},{py:.2} h-6 ");
        let _ = writeln!(
            labels,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{v:.3}</text>"#,
            y0 + 20.0
        );
        let _ = writeln!(
            labels,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"#,
            x0 - 9.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<path class="ticks" d="{}" fill="none" stroke="black"/>"#,
        ticks.trim_end()
    );
    s.push_str(&labels);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">Predicted win percentage</text>"#,
        SIZE / 2.0,
        SIZE - 18.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">Observed win percentage</text>"#,
        SIZE / 2.0,
        SIZE / 2.0
    );
    let _ = writeln!(
        s,
        r#"<line class="reference" x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y1:.2}" stroke="firebrick" stroke-dasharray="6 4"/>"#
    );

    let _ = writeln!(s, r#"<g class="marks" fill="steelblue" fill-opacity="0.35">"#);
    for &(p, o) in &points {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1.5"/>"#, sx(p), sy(o));
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// Common [lo, hi] covering every coordinate, padded by 2% and kept in [0, 1].
fn domain(points: &[(f64, f64)]) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(a, b) in points {
        for v in [a, b] {
            if v.is_finite() {
                lo = lo.min(v);
                hi = hi.max(v);
            }
        }
    }
    if !(lo < hi) {
        return (0.0, 1.0);
    }
    let pad = 0.02 * (hi - lo);
    ((lo - pad).max(0.0), (hi + pad).min(1.0))
}
