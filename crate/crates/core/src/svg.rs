//! Minimal self-contained SVG line plots for quick visual checks.
//!
//! One polyline per curve, autoscaled axes with tick labels; no external
//! renderer needed.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Debug, Clone)]
pub struct Curve {
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub curves: Vec<Curve>,
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-300 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

impl Plot {
    pub fn render(&self) -> Result<String> {
        if self.curves.is_empty() {
            return Err(Error::InvalidParameter("plot with no curves".into()));
        }
        for c in &self.curves {
            if c.x.len() != c.y.len() || c.x.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "curve '{}' has mismatched or empty data",
                    c.label
                )));
            }
        }
        let (width, height) = (800.0, 480.0);
        let (ml, mr, mt, mb) = (70.0, 140.0, 40.0, 50.0);
        let (pw, ph) = (width - ml - mr, height - mt - mb);
        let (x0, x1) = range(self.curves.iter().flat_map(|c| c.x.iter().copied()));
        let (y0, y1) = range(self.curves.iter().flat_map(|c| c.y.iter().copied()));
        let sx = |x: f64| ml + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| mt + (1.0 - (y - y0) / (y1 - y0)) * ph;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
            ml + pw / 2.0,
            self.title
        );
        // axes box and ticks
        let _ = writeln!(
            s,
            r#"<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for i in 0..=4 {
            let fx = i as f64 / 4.0;
            let x = ml + fx * pw;
            let y = mt + fx * ph;
            let xv = x0 + fx * (x1 - x0);
            let yv = y1 - fx * (y1 - y0);
            let _ = writeln!(
                s,
                r#"<text x="{x}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{xv:.3}</text>"#,
                mt + ph + 18.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="end" font-family="sans-serif" font-size="11">{yv:.3}</text>"#,
                ml - 6.0,
                y + 4.0
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
            ml + pw / 2.0,
            height - 10.0,
            self.x_label
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 16 {})">{}</text>"#,
            mt + ph / 2.0,
            mt + ph / 2.0,
            self.y_label
        );
        for (ci, c) in self.curves.iter().enumerate() {
            let color = PALETTE[ci % PALETTE.len()];
            let mut pts = String::new();
            for (&x, &y) in c.x.iter().zip(&c.y) {
                let _ = write!(pts, "{:.2},{:.2} ", sx(x), sy(y));
            }
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                pts.trim_end()
            );
            let ly = mt + 16.0 + 18.0 * ci as f64;
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
                ml + pw + 8.0,
                ml + pw + 32.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
                ml + pw + 38.0,
                ly + 4.0,
                c.label
            );
        }
        s.push_str("</svg>\n");
        Ok(s)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.render()?)
            .map_err(|e| Error::NumericalFailure(format!("write {}: {e}", path.display())))
    }
}
