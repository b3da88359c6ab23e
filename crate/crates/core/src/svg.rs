//! Minimal SVG charts: line, scatter and bar series on linear or log axes,
//! and grayscale heatmaps.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;
const PALETTE: [&str; 7] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Line,
    Points,
    Bars,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub style: Style,
    pub points: Vec<(f64, f64)>,
    pub color: Option<&'static str>,
}

impl Series {
    pub fn new(label: impl Into<String>, style: Style, points: Vec<(f64, f64)>) -> Self {
        Self {
            label: label.into(),
            style,
            points,
            color: None,
        }
    }

    pub fn with_color(mut self, color: &'static str) -> Self {
        self.color = Some(color);
        self
    }
}

#[derive(Debug, Clone)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub series: Vec<Series>,
    pub x_range: Option<(f64, f64)>,
    pub y_range: Option<(f64, f64)>,
}

impl Chart {
    pub fn new(title: impl Into<String>, x_label: impl Into<String>, y_label: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            log_x: false,
            series: Vec::new(),
            x_range: None,
            y_range: None,
        }
    }

    pub fn log_x(mut self) -> Self {
        self.log_x = true;
        self
    }

    pub fn push(&mut self, series: Series) {
        self.series.push(series);
    }

    fn bounds(&self) -> ((f64, f64), (f64, f64)) {
        let pts = self.series.iter().flat_map(|s| s.points.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in pts {
            let x = if self.log_x { x.log10() } else { x };
            if x.is_finite() && y.is_finite() {
                x0 = x0.min(x);
                x1 = x1.max(x);
                y0 = y0.min(y);
                y1 = y1.max(y);
            }
        }
        if self.series.iter().any(|s| s.style == Style::Bars) {
            y0 = y0.min(0.0);
        }
        let pad = |lo: f64, hi: f64| {
            if !lo.is_finite() {
                (0.0, 1.0)
            } else if hi - lo < 1e-12 {
                (lo - 0.5, hi + 0.5)
            } else {
                let d = 0.04 * (hi - lo);
                (lo - d, hi + d)
            }
        };
        let xr = match self.x_range {
            Some((a, b)) if self.log_x => (a.log10(), b.log10()),
            Some(r) => r,
            None => pad(x0, x1),
        };
        (xr, self.y_range.unwrap_or_else(|| pad(y0, y1)))
    }

    pub fn render(&self) -> String {
        let ((x0, x1), (y0, y1)) = self.bounds();
        let pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let log_x = self.log_x;
        let sx = |x: f64| {
            let x = if log_x { x.log10() } else { x };
            MARGIN_LEFT + (x - x0) / (x1 - x0) * pw
        };
        let sy = |y: f64| MARGIN_TOP + (y1 - y) / (y1 - y0) * ph;

        let mut out = header(WIDTH, HEIGHT);
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            out,
            r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for k in 0..=5 {
            let t = k as f64 / 5.0;
            let xv = x0 + t * (x1 - x0);
            let label = if log_x { format!("1e{xv:.1}") } else { tick(xv) };
            let px = MARGIN_LEFT + t * pw;
            let _ = writeln!(
                out,
                r#"<line x1="{px:.1}" y1="{:.1}" x2="{px:.1}" y2="{:.1}" stroke="black"/><text x="{px:.1}" y="{:.1}" text-anchor="middle" font-size="11">{label}</text>"#,
                MARGIN_TOP + ph,
                MARGIN_TOP + ph + 5.0,
                MARGIN_TOP + ph + 18.0
            );
            let yv = y0 + t * (y1 - y0);
            let py = sy(yv);
            let _ = writeln!(
                out,
                r#"<line x1="{:.1}" y1="{py:.1}" x2="{MARGIN_LEFT}" y2="{py:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end" font-size="11">{}</text>"#,
                MARGIN_LEFT - 5.0,
                MARGIN_LEFT - 8.0,
                py + 4.0,
                tick(yv)
            );
        }
        if y0 < 0.0 && y1 > 0.0 {
            let _ = writeln!(
                out,
                r##"<line x1="{MARGIN_LEFT}" y1="{0:.1}" x2="{1:.1}" y2="{0:.1}" stroke="#999" stroke-dasharray="4 3"/>"##,
                sy(0.0),
                MARGIN_LEFT + pw
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="13">{}</text>"#,
            MARGIN_LEFT + pw / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="18" y="{0:.1}" text-anchor="middle" font-size="13" transform="rotate(-90 18 {0:.1})">{1}</text>"#,
            MARGIN_TOP + ph / 2.0,
            escape(&self.y_label)
        );

        let bar_count = self.series.iter().filter(|s| s.style == Style::Bars).count().max(1);
        let mut bar_index = 0;
        for (idx, s) in self.series.iter().enumerate() {
            let color = s.color.unwrap_or(PALETTE[idx % PALETTE.len()]);
            match s.style {
                Style::Line => {
                    let path: Vec<String> = s
                        .points
                        .iter()
                        .filter(|(x, y)| x.is_finite() && y.is_finite())
                        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                        .collect();
                    let _ = writeln!(
                        out,
                        r#"<polyline fill="none" stroke="{color}" stroke-width="1.6" points="{}"/>"#,
                        path.join(" ")
                    );
                }
                Style::Points => {
                    for &(x, y) in &s.points {
                        let _ = writeln!(
                            out,
                            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="none" stroke="{color}"/>"#,
                            sx(x),
                            sy(y)
                        );
                    }
                }
                Style::Bars => {
                    let unit = if s.points.len() > 1 {
                        (sx(s.points[1].0) - sx(s.points[0].0)).abs()
                    } else {
                        pw / 10.0
                    };
                    let w = 0.8 * unit / bar_count as f64;
                    for &(x, y) in &s.points {
                        let left = sx(x) - 0.4 * unit + bar_index as f64 * w;
                        let (top, bottom) = (sy(y.max(0.0)), sy(y.min(0.0)));
                        let _ = writeln!(
                            out,
                            r#"<rect x="{left:.2}" y="{top:.2}" width="{w:.2}" height="{:.2}" fill="{color}" fill-opacity="0.6"/>"#,
                            bottom - top
                        );
                    }
                    bar_index += 1;
                }
            }
            let ly = MARGIN_TOP + 14.0 + 16.0 * idx as f64;
            let lx = MARGIN_LEFT + pw - 150.0;
            let _ = writeln!(
                out,
                r#"<rect x="{lx:.1}" y="{:.1}" width="12" height="4" fill="{color}"/><text x="{:.1}" y="{ly:.1}" font-size="11">{}</text>"#,
                ly - 5.0,
                lx + 16.0,
                escape(&s.label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Grayscale image of `values` (row-major, `rows x cols`, first row at the bottom).
pub fn heatmap(title: &str, values: &[f64], rows: usize, cols: usize) -> String {
    let side = 400.0;
    let (w, h) = (side + 40.0, side + 70.0);
    let max = values.iter().cloned().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let (cw, ch) = (side / cols as f64, side / rows as f64);
    let mut out = header(w, h);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        w / 2.0,
        escape(title)
    );
    for r in 0..rows {
        for c in 0..cols {
            let level = (255.0 * (1.0 - values[r * cols + c] / max)).round().clamp(0.0, 255.0) as u8;
            let _ = writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({level},{level},{level})"/>"#,
                20.0 + c as f64 * cw,
                40.0 + (rows - 1 - r) as f64 * ch,
                cw + 0.05,
                ch + 0.05
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    )
}

fn tick(v: f64) -> String {
    if v == 0.0 || (v.abs() >= 1e-2 && v.abs() < 1e4) {
        format!("{:.3}", v).trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.1e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_all_styles() {
        let mut c = Chart::new("t < 1", "x", "y").log_x();
        c.push(Series::new("line", Style::Line, vec![(0.01, 1.0), (1.0, 2.0), (100.0, -1.0)]));
        c.push(Series::new("pts", Style::Points, vec![(0.1, 0.5)]));
        c.push(Series::new("bars", Style::Bars, vec![(1.0, 0.3), (2.0, 0.7)]));
        let svg = c.render();
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("polyline") && svg.contains("circle") && svg.contains("fill-opacity"));
        assert!(svg.contains("t &lt; 1"));
    }

    #[test]
    fn heatmap_has_one_cell_per_value() {
        let svg = heatmap("h", &[0.0, 1.0, 2.0, 3.0], 2, 2);
        assert_eq!(svg.matches("<rect").count(), 5);
    }
}
