//! Minimal SVG output for sweep curves, scatter plots, and bucket heatmaps.
//! Everything is rendered locally into plain SVG text.

use crate::metrics::BucketMatrix;
use std::fmt::Write as _;

pub struct SvgCanvas {
    width: f64,
    height: f64,
    body: String,
}

impl SvgCanvas {
    pub fn new(width: f64, height: f64) -> Self {
        SvgCanvas {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{fill}"/>"#
        );
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="{width}"/>"#
        );
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r}" fill="{fill}"/>"#
        );
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, width: f64) {
        let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
            pts.join(" ")
        );
    }

    pub fn polygon(&mut self, points: &[(f64, f64)], fill: &str) {
        let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="none"/>"#,
            pts.join(" ")
        );
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, content: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.2}" y="{y:.2}" font-size="{size}" font-family="sans-serif">{content}</text>"#
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        )
    }
}

const MARGIN: f64 = 50.0;
const PLOT: f64 = 400.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

pub struct Series {
    pub label: String,
    /// `(param, q1, median, q3)` sorted by param.
    pub points: Vec<(f64, f64, f64, f64)>,
}

/// Median curves with quartile bands, one series per gamma.
pub fn sweep_curve_svg(title: &str, x_label: &str, series: &[Series]) -> String {
    let mut canvas = SvgCanvas::new(PLOT + 2.0 * MARGIN, PLOT + 2.0 * MARGIN);
    let xs: Vec<f64> = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.0))
        .collect();
    let ys: Vec<f64> = series
        .iter()
        .flat_map(|s| s.points.iter().flat_map(|p| [p.1, p.2, p.3]))
        .collect();
    let (x_min, x_max) = bounds(&xs);
    let (y_min, y_max) = bounds(&ys);
    let sx = |x: f64| MARGIN + (x - x_min) / (x_max - x_min).max(1e-12) * PLOT;
    let sy = |y: f64| MARGIN + PLOT - (y - y_min) / (y_max - y_min).max(1e-12) * PLOT;

    axes(&mut canvas, x_min, x_max, y_min, y_max);
    for (idx, s) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let mut band: Vec<(f64, f64)> = s.points.iter().map(|p| (sx(p.0), sy(p.1))).collect();
        band.extend(s.points.iter().rev().map(|p| (sx(p.0), sy(p.3))));
        canvas.polygon(&band, &format!("{color}33"));
        let median: Vec<(f64, f64)> = s.points.iter().map(|p| (sx(p.0), sy(p.2))).collect();
        canvas.polyline(&median, color, 1.5);
        canvas.text(
            MARGIN + 8.0,
            MARGIN + 16.0 + 14.0 * idx as f64,
            12.0,
            &format!("<tspan fill=\"{color}\">{}</tspan>", s.label),
        );
    }
    canvas.text(MARGIN + PLOT / 2.0 - 20.0, PLOT + 2.0 * MARGIN - 10.0, 12.0, x_label);
    canvas.text(MARGIN, MARGIN - 20.0, 13.0, title);
    canvas.finish()
}

/// Per-seed scatter of one score against another, with marginal-median guide
/// lines and the y = x diagonal.
pub fn scatter_svg(title: &str, points: &[(f64, f64)], x_median: f64, y_median: f64) -> String {
    let mut canvas = SvgCanvas::new(PLOT + 2.0 * MARGIN, PLOT + 2.0 * MARGIN);
    let all: Vec<f64> = points.iter().flat_map(|&(x, y)| [x, y]).collect();
    let (lo, hi) = bounds(&all);
    let s = |v: f64| (v - lo) / (hi - lo).max(1e-12) * PLOT;
    let sx = |x: f64| MARGIN + s(x);
    let sy = |y: f64| MARGIN + PLOT - s(y);

    axes(&mut canvas, lo, hi, lo, hi);
    canvas.line(sx(lo), sy(lo), sx(hi), sy(hi), "#bbbbbb", 1.0);
    canvas.line(sx(x_median), sy(lo), sx(x_median), sy(hi), "#dddddd", 1.0);
    canvas.line(sx(lo), sy(y_median), sx(hi), sy(y_median), "#dddddd", 1.0);
    for &(x, y) in points {
        canvas.circle(sx(x), sy(y), 2.5, "#1f77b4");
    }
    canvas.text(MARGIN, MARGIN - 20.0, 13.0, title);
    canvas.finish()
}

/// Lower-triangle heatmap of a bucket MCC matrix. Linear grayscale over
/// [0, 1] with negative values clamped to 0; darker means higher MCC.
pub fn heatmap_svg(title: &str, matrix: &BucketMatrix) -> String {
    let k = matrix.buckets.len();
    let cell = (PLOT / k.max(1) as f64).min(40.0);
    let side = cell * k as f64;
    let mut canvas = SvgCanvas::new(side + 2.0 * MARGIN, side + 2.0 * MARGIN);

    // bucket i on the x axis, bucket j on the y axis with low degrees at the
    // bottom, so the triangle fills the lower right
    for (i, row) in matrix.cells.iter().enumerate() {
        for (j, (_, value)) in row.iter().enumerate() {
            let shade = value.clamp(0.0, 1.0);
            let level = ((1.0 - shade) * 255.0).round() as u8;
            let fill = format!("#{level:02x}{level:02x}{level:02x}");
            let x = MARGIN + i as f64 * cell;
            let y = MARGIN + side - (j + 1) as f64 * cell;
            canvas.rect(x, y, cell, cell, &fill);
        }
    }
    for (i, bucket) in matrix.buckets.iter().enumerate() {
        canvas.text(
            MARGIN + i as f64 * cell + 2.0,
            MARGIN + side + 14.0,
            9.0,
            &format!("{}-{}", bucket.lo, bucket.hi),
        );
    }
    canvas.text(MARGIN, MARGIN - 20.0, 13.0, title);
    canvas.finish()
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn axes(canvas: &mut SvgCanvas, x_min: f64, x_max: f64, y_min: f64, y_max: f64) {
    canvas.line(MARGIN, MARGIN + PLOT, MARGIN + PLOT, MARGIN + PLOT, "black", 1.0);
    canvas.line(MARGIN, MARGIN, MARGIN, MARGIN + PLOT, "black", 1.0);
    for t in 0..=4 {
        let frac = t as f64 / 4.0;
        let x = x_min + frac * (x_max - x_min);
        let y = y_min + frac * (y_max - y_min);
        canvas.text(MARGIN + frac * PLOT - 10.0, MARGIN + PLOT + 16.0, 10.0, &format!("{x:.2}"));
        canvas.text(8.0, MARGIN + PLOT - frac * PLOT + 4.0, 10.0, &format!("{y:.2}"));
    }
}
