//! Minimal SVG heatmaps and line plots.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub struct Axes<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(a: &Axes) -> Self {
        let pad = |r: (f64, f64)| if r.1 > r.0 { r } else { (r.0 - 0.5, r.0 + 0.5) };
        let (x0, x1) = pad(a.x_range);
        let (y0, y1) = pad(a.y_range);
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| span / s <= 6.0).unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut out = Vec::new();
    while t <= hi + 1e-9 * span {
        out.push(if t.abs() < 1e-12 * span { 0.0 } else { t });
        t += step;
    }
    out
}

fn axes(out: &mut String, a: &Axes, f: &Frame) {
    let (l, r, t, b) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    let _ = writeln!(out, r#"<rect x="{l}" y="{t}" width="{}" height="{}" fill="none" stroke="black"/>"#, r - l, b - t);
    for x in ticks(f.x0, f.x1) {
        let p = f.px(x);
        let _ = writeln!(out, r#"<line x1="{p:.2}" y1="{b}" x2="{p:.2}" y2="{:.2}" stroke="black"/>"#, b + 5.0);
        let _ = writeln!(out, r#"<text x="{p:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, b + 18.0, fmt_tick(x));
    }
    for y in ticks(f.y0, f.y1) {
        let p = f.py(y);
        let _ = writeln!(out, r#"<line x1="{:.2}" y1="{p:.2}" x2="{l}" y2="{p:.2}" stroke="black"/>"#, l - 5.0);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, l - 8.0, p + 4.0, fmt_tick(y));
    }
    let _ = writeln!(out, r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#, (l + r) / 2.0, escape(a.title));
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, (l + r) / 2.0, HEIGHT - 20.0, escape(a.x_label));
    let _ = writeln!(
        out,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        (t + b) / 2.0,
        (t + b) / 2.0,
        escape(a.y_label)
    );
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Perceptually ordered dark-to-bright colour for v in [0, 1].
fn color(v: f64) -> String {
    const STOPS: [(f64, f64, f64); 5] =
        [(68.0, 1.0, 84.0), (59.0, 82.0, 139.0), (33.0, 145.0, 140.0), (94.0, 201.0, 98.0), (253.0, 231.0, 37.0)];
    let v = v.clamp(0.0, 1.0) * 4.0;
    let k = (v.floor() as usize).min(3);
    let t = v - k as f64;
    let (a, b) = (STOPS[k], STOPS[k + 1]);
    let mix = |x: f64, y: f64| (x + (y - x) * t).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

/// Heatmap of `values` (row-major, `ny` rows of `nx`, row 0 at the bottom)
/// scaled by its maximum.
pub fn heatmap(a: &Axes, values: &[f64], nx: usize, ny: usize) -> String {
    let f = Frame::new(a);
    let mut out = String::new();
    header(&mut out);
    let max = values.iter().copied().fold(0.0, f64::max);
    let _ = writeln!(out, r#"<g shape-rendering="crispEdges">"#);
    let cw = (WIDTH - LEFT - RIGHT) / nx as f64;
    let ch = (HEIGHT - TOP - BOTTOM) / ny as f64;
    for j in 0..ny {
        for i in 0..nx {
            let v = if max > 0.0 { values[j * nx + i] / max } else { 0.0 };
            let x = LEFT + i as f64 * cw;
            let y = HEIGHT - BOTTOM - (j + 1) as f64 * ch;
            let _ = writeln!(
                out,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                cw + 0.5,
                ch + 0.5,
                color(v)
            );
        }
    }
    out.push_str("</g>\n");
    axes(&mut out, a, &f);
    out.push_str("</svg>\n");
    out
}

pub struct Series<'a> {
    pub label: String,
    pub points: &'a [(f64, f64)],
    pub markers: bool,
}

/// Line plot with an optional dashed horizontal reference line.
pub fn line_plot(a: &Axes, series: &[Series], hline: Option<f64>) -> String {
    let f = Frame::new(a);
    let mut out = String::new();
    header(&mut out);
    axes(&mut out, a, &f);
    let slack = 1e-9 * (f.x1 - f.x0);
    let inside = |x: f64, y: f64| x >= f.x0 - slack && x <= f.x1 + slack && y.is_finite();
    if let Some(h) = hline {
        let y = f.py(h);
        let _ = writeln!(
            out,
            r#"<line x1="{LEFT}" y1="{y:.2}" x2="{}" y2="{y:.2}" stroke="black" stroke-dasharray="6 4"/>"#,
            WIDTH - RIGHT
        );
    }
    for (k, s) in series.iter().enumerate() {
        let c = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|p| inside(p.0, p.1))
            .map(|&(x, y)| format!("{:.2},{:.2}", f.px(x), f.py(y.clamp(f.y0, f.y1))))
            .collect();
        if !pts.is_empty() {
            let _ = writeln!(out, r#"<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#, pts.join(" "));
        }
        if s.markers {
            for p in &pts {
                let (x, y) = p.split_once(',').unwrap_or(("0", "0"));
                let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="3" fill="white" stroke="{c}"/>"#);
            }
        }
    }
    if !series.is_empty() {
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="145" height="{}" fill="white" fill-opacity="0.85" stroke="gray"/>"#,
            WIDTH - RIGHT - 156.0,
            TOP + 5.0,
            16.0 * series.len() as f64 + 6.0
        );
    }
    for (k, s) in series.iter().enumerate() {
        let c = PALETTE[k % PALETTE.len()];
        let ly = TOP + 16.0 + 16.0 * k as f64;
        let lx = WIDTH - RIGHT - 150.0;
        let _ = writeln!(out, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{c}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(&s.label));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_are_round_numbers() {
        assert_eq!(ticks(0.0, 1.0), vec![0.0, 0.2, 0.4, 0.6000000000000001, 0.8, 1.0]);
        assert_eq!(fmt_tick(0.6000000000000001), "0.6");
        assert_eq!(ticks(540.0, 560.0), vec![540.0, 545.0, 550.0, 555.0, 560.0]);
    }

    #[test]
    fn colors_span_the_palette() {
        assert_eq!(color(0.0), "#440154");
        assert_eq!(color(1.0), "#fde725");
        assert_eq!(color(2.0), color(1.0));
    }

    #[test]
    fn documents_are_well_formed() {
        let a = Axes { title: "a<b", x_label: "x", y_label: "y", x_range: (0.0, 1.0), y_range: (0.0, 1.0) };
        let h = heatmap(&a, &[0.0, 1.0, 0.5, 0.25], 2, 2);
        assert!(h.starts_with("<svg") && h.ends_with("</svg>\n"));
        assert_eq!(h.matches("<rect").count(), 6);
        assert!(h.contains("a&lt;b"));
        let pts = [(0.0, 0.0), (1.0, 1.0)];
        let l = line_plot(&a, &[Series { label: "s".into(), points: &pts, markers: false }], Some(0.9));
        assert!(l.contains("polyline") && l.contains("stroke-dasharray"));
    }
}
