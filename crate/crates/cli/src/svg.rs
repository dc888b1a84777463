//! Static, self-contained SVG charts.
//!
//! Two charts per scenario. The orbit overlay shows both pseudo-orbits, the
//! fixed-point line and shaded laminar segments. The divergence chart plots
//! `log₁₀ δ` against `n` with an `n_max` marker.

use crate::scenario::Analysis;
use pseudorbit::{PhaseKind, Segmentation};
use std::fmt::Write as _;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 380.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// `log₁₀ δ` below this is drawn at this value; zero δ lands here too.
pub const LOG_DELTA_FLOOR: f64 = -20.0;

const COLOR_A: &str = "#1f77b4";
const COLOR_B: &str = "#d62728";

struct Frame {
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn px(&self, n: f64) -> f64 {
        LEFT + n / self.x_max.max(1.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        let t = (y - self.y_min) / (self.y_max - self.y_min);
        HEIGHT - BOTTOM - t * (HEIGHT - TOP - BOTTOM)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
}

fn axes(out: &mut String, frame: &Frame, y_ticks: &[f64], y_label: &str) {
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        out,
        r#"<path d="M{x0:.1},{y1:.1} L{x0:.1},{y0:.1} L{x1:.1},{y0:.1}" fill="none" stroke="black"/>"#
    );
    let steps = if frame.x_max >= 4.0 { 4 } else { frame.x_max.max(1.0) as usize };
    for i in 0..=steps {
        let n = (frame.x_max * i as f64 / steps as f64).round();
        let x = frame.px(n);
        let _ = writeln!(
            out,
            r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{n}</text>"#,
            y0 + 5.0,
            y0 + 18.0
        );
    }
    for &t in y_ticks {
        let y = frame.py(t);
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{y:.1}" x2="{x0:.1}" y2="{y:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">{t}</text>"#,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">n</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.1}" text-anchor="middle" transform="rotate(-90 18 {:.1})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(y_label)
    );
}

fn series(out: &mut String, frame: &Frame, ys: &[f64], color: &str, dash: Option<&str>) {
    if ys.len() == 1 {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
            frame.px(0.0),
            frame.py(ys[0])
        );
        return;
    }
    let mut points = String::with_capacity(ys.len() * 16);
    for (n, &y) in ys.iter().enumerate() {
        let _ = write!(points, "{:.2},{:.2} ", frame.px(n as f64), frame.py(y));
    }
    let dash = dash.map_or(String::new(), |d| format!(r#" stroke-dasharray="{d}""#));
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="0.8"{dash}/>"#,
        points.trim_end()
    );
}

fn shade_laminar(out: &mut String, frame: &Frame, segs: &Segmentation, color: &str, band: (f64, f64)) {
    for s in segs.segments().iter().filter(|s| s.kind == PhaseKind::Laminar) {
        let x = frame.px(s.start as f64);
        let w = (frame.px(s.end as f64 + 1.0) - x).max(1.0);
        let (y_top, y_bottom) = (frame.py(band.1), frame.py(band.0));
        let _ = writeln!(
            out,
            r#"<rect x="{x:.2}" y="{y_top:.2}" width="{w:.2}" height="{:.2}" fill="{color}" fill-opacity="0.15"/>"#,
            y_bottom - y_top
        );
    }
}

fn legend(out: &mut String, entries: &[(&str, &str)]) {
    for (i, (color, label)) in entries.iter().enumerate() {
        let x = LEFT + 10.0 + i as f64 * 210.0;
        let _ = writeln!(
            out,
            r#"<rect x="{x:.1}" y="{:.1}" width="14" height="3" fill="{color}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            TOP - 12.0,
            x + 18.0,
            TOP - 8.0,
            escape(label)
        );
    }
}

/// Both pseudo-orbits over `n`, with the fixed point and laminar phases.
pub fn orbit_chart(a: &Analysis) -> String {
    let xa = a.orbit_a.values();
    let xb = a.orbit_b.values();
    let frame = Frame {
        x_max: (xa.len() - 1) as f64,
        y_min: 0.0,
        y_max: 1.0,
    };
    let mut out = String::new();
    header(
        &mut out,
        &format!(
            "Pseudo-orbits, r = {}, x0 = {}",
            a.orbit_a.params().r_exact(),
            a.x0.label()
        ),
    );
    // laminar shading: form A in the upper half, form B in the lower half
    shade_laminar(&mut out, &frame, &a.report.segments_a, COLOR_A, (0.5, 1.0));
    shade_laminar(&mut out, &frame, &a.report.segments_b, COLOR_B, (0.0, 0.5));
    axes(&mut out, &frame, &[0.0, 0.25, 0.5, 0.75, 1.0], "x_n");
    let y_star = frame.py(a.x_star);
    let _ = writeln!(
        out,
        r##"<line x1="{LEFT:.1}" y1="{y_star:.2}" x2="{:.1}" y2="{y_star:.2}" stroke="#555" stroke-dasharray="6 4"/><text x="{:.1}" y="{:.2}" text-anchor="end" fill="#555">x* = {:.6}</text>"##,
        WIDTH - RIGHT,
        WIDTH - RIGHT - 4.0,
        y_star - 4.0,
        a.x_star
    );
    series(&mut out, &frame, xa, COLOR_A, None);
    series(&mut out, &frame, xb, COLOR_B, Some("3 2"));
    legend(
        &mut out,
        &[
            (COLOR_A, &format!("form A: {}", a.orbit_a.form().description())),
            (COLOR_B, &format!("form B: {}", a.orbit_b.form().description())),
        ],
    );
    out.push_str("</svg>\n");
    out
}

/// `log₁₀ δ_n` over `n`, clamped at [`LOG_DELTA_FLOOR`], with `n_max`.
pub fn divergence_chart(a: &Analysis) -> String {
    let delta = a.series.delta();
    let logs: Vec<f64> = delta
        .iter()
        .map(|&d| if d > 0.0 { d.log10().max(LOG_DELTA_FLOOR) } else { LOG_DELTA_FLOOR })
        .collect();
    let frame = Frame {
        x_max: (delta.len() - 1) as f64,
        y_min: LOG_DELTA_FLOOR,
        y_max: 0.0,
    };
    let mut out = String::new();
    header(
        &mut out,
        &format!(
            "Lower bound error, r = {}, x0 = {}",
            a.orbit_a.params().r_exact(),
            a.x0.label()
        ),
    );
    let ticks: Vec<f64> = (0..=10).map(|i| LOG_DELTA_FLOOR + 2.0 * i as f64).collect();
    axes(&mut out, &frame, &ticks, "log10(delta_n)");
    series(&mut out, &frame, &logs, COLOR_A, None);

    if delta.iter().all(|&d| d == 0.0) {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="16">no divergence</text>"#,
            WIDTH / 2.0,
            HEIGHT / 2.0
        );
    }
    if let Some(n_max) = a.series.n_max() {
        let x = frame.px(n_max as f64);
        let _ = writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{TOP:.1}" x2="{x:.2}" y2="{:.1}" stroke="#2ca02c" stroke-width="1.5"/><text x="{:.2}" y="{:.1}" fill="#2ca02c">n_max = {n_max}</text>"##,
            HEIGHT - BOTTOM,
            x + 4.0,
            TOP + 14.0
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
