//! CSV, JSON and SVG writers.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, Output};
use crate::error::CliError;

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(config: &Value, columns: &[&str]) -> Self {
        let mut text = format!("# config {config}\n");
        text.push_str(&columns.join(","));
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Writes `contents` if `format` was requested; returns the path written.
pub fn emit(out: &Output, format: Format, contents: impl FnOnce() -> String) -> Result<Option<String>, CliError> {
    if !out.wants(format) {
        return Ok(None);
    }
    let path = out.path(format);
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(&path, contents()).map_err(|e| CliError::io(&path, e))?;
    Ok(Some(path.display().to_string()))
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

impl Series {
    pub fn line(label: &str, color: &'static str, points: Vec<(f64, f64)>) -> Self {
        Self {
            label: label.into(),
            color,
            points,
            dashed: false,
        }
    }

    pub fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Marker {
    pub label: String,
    pub color: &'static str,
    pub at: (f64, f64),
}

/// Static line plot: autoscaled to the data with a 5% margin, axes through
/// the origin when visible, and a legend.
#[derive(Debug, Clone, Default)]
pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    pub markers: Vec<Marker>,
    /// Keep one unit the same length on both axes.
    pub equal_aspect: bool,
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 48.0;

impl Plot {
    fn bounds(&self) -> (f64, f64, f64, f64) {
        let pts = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().copied())
            .chain(self.markers.iter().map(|m| m.at))
            .filter(|(x, y)| x.is_finite() && y.is_finite());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            return (-1.0, 1.0, -1.0, 1.0);
        }
        let widen = |a: f64, b: f64| {
            let d = if b > a { 0.05 * (b - a) } else { 0.5f64.max(0.05 * a.abs()) };
            (a - d, b + d)
        };
        let (x0, x1) = widen(x0, x1);
        let (y0, y1) = widen(y0, y1);
        if !self.equal_aspect {
            return (x0, x1, y0, y1);
        }
        let (sx, sy) = ((x1 - x0) / (W - 2.0 * PAD), (y1 - y0) / (H - 2.0 * PAD));
        let s = sx.max(sy);
        let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
        let (hx, hy) = (0.5 * s * (W - 2.0 * PAD), 0.5 * s * (H - 2.0 * PAD));
        (cx - hx, cx + hx, cy - hy, cy + hy)
    }

    pub fn render(&self, config: &Value) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let px = |x: f64| PAD + (x - x0) / (x1 - x0) * (W - 2.0 * PAD);
        let py = |y: f64| H - PAD - (y - y0) / (y1 - y0) * (H - 2.0 * PAD);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(s, "<!-- config {} -->", config.to_string().replace("--", "- -"));
        let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r##"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="#999"/>"##,
            W - 2.0 * PAD,
            H - 2.0 * PAD
        );
        if x0 < 0.0 && 0.0 < x1 {
            let _ = writeln!(
                s,
                r##"<line x1="{0:.3}" y1="{PAD}" x2="{0:.3}" y2="{1}" stroke="#bbb"/>"##,
                px(0.0),
                H - PAD
            );
        }
        if y0 < 0.0 && 0.0 < y1 {
            let _ = writeln!(
                s,
                r##"<line x1="{PAD}" y1="{0:.3}" x2="{1}" y2="{0:.3}" stroke="#bbb"/>"##,
                py(0.0),
                W - PAD
            );
        }
        let text = |s: &mut String, x: f64, y: f64, anchor: &str, body: &str| {
            let _ = writeln!(
                s,
                r#"<text x="{x:.3}" y="{y:.3}" font-family="sans-serif" font-size="11" text-anchor="{anchor}">{}</text>"#,
                escape(body)
            );
        };
        text(&mut s, W / 2.0, 20.0, "middle", &self.title);
        text(&mut s, W / 2.0, H - 10.0, "middle", &self.x_label);
        text(&mut s, 12.0, H / 2.0, "start", &self.y_label);
        text(&mut s, PAD, H - PAD + 14.0, "start", &format!("{x0:.4}"));
        text(&mut s, W - PAD, H - PAD + 14.0, "end", &format!("{x1:.4}"));
        text(&mut s, PAD - 4.0, H - PAD, "end", &format!("{y0:.4}"));
        text(&mut s, PAD - 4.0, PAD + 8.0, "end", &format!("{y1:.4}"));

        for ser in &self.series {
            let pts: Vec<String> = ser
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y)))
                .collect();
            if pts.is_empty() {
                continue;
            }
            let dash = if ser.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
                ser.color,
                pts.join(" ")
            );
        }
        for m in &self.markers {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="{}"/>"#,
                px(m.at.0),
                py(m.at.1),
                m.color
            );
        }

        let mut y = PAD + 16.0;
        let entries = self
            .series
            .iter()
            .map(|e| (&e.label, e.color, false))
            .chain(self.markers.iter().map(|m| (&m.label, m.color, true)))
            .filter(|(l, _, _)| !l.is_empty());
        let mut seen: Vec<&String> = Vec::new();
        for (label, color, dot) in entries {
            if seen.contains(&label) {
                continue;
            }
            seen.push(label);
            let lx = PAD + 10.0;
            if dot {
                let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="{color}"/>"#, lx + 10.0, y - 4.0);
            } else {
                let _ = writeln!(
                    s,
                    r#"<line x1="{lx:.3}" y1="{0:.3}" x2="{1:.3}" y2="{0:.3}" stroke="{color}" stroke-width="2"/>"#,
                    y - 4.0,
                    lx + 20.0
                );
            }
            text(&mut s, lx + 26.0, y, "start", label);
            y += 16.0;
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
