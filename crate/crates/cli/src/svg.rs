//! Standalone SVG line plots.

use std::fmt::Write as _;

use tumor_core::orchestrator::Trajectory;
use tumor_core::State;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Alpha,
    U,
    C,
    Radius,
}

impl Field {
    pub const ALL: [Field; 4] = [Field::Alpha, Field::U, Field::C, Field::Radius];

    pub fn name(self) -> &'static str {
        match self {
            Field::Alpha => "alpha",
            Field::U => "u",
            Field::C => "c",
            Field::Radius => "radius",
        }
    }
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
/// Upper bound on the vertices of the radius polyline.
const MAX_POINTS: usize = 2000;

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn new(points: impl Iterator<Item = (f64, f64)>) -> Self {
        let (mut x, mut y) = ((f64::INFINITY, f64::NEG_INFINITY), (f64::INFINITY, f64::NEG_INFINITY));
        for (a, b) in points {
            x = (x.0.min(a), x.1.max(a));
            y = (y.0.min(b), y.1.max(b));
        }
        let widen = |r: (f64, f64)| {
            if !r.0.is_finite() {
                (0.0, 1.0)
            } else if r.1 - r.0 <= 1e-12 * r.0.abs().max(1.0) {
                (r.0 - 0.5, r.1 + 0.5)
            } else {
                r
            }
        };
        Self {
            x: widen(x),
            y: widen(y),
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }
}

/// Blue at `s = 0` through red at `s = 1`.
fn colour(s: f64) -> String {
    let s = s.clamp(0.0, 1.0);
    let r = (40.0 + 200.0 * s).round() as u8;
    let b = (220.0 - 190.0 * s).round() as u8;
    format!("#{r:02x}40{b:02x}")
}

fn profile(state: &State, field: Field, h: f64) -> Vec<(f64, f64)> {
    let jn = state.radius_index;
    (0..=jn)
        .map(|j| {
            let x = j as f64 * h;
            let y = match field {
                Field::Alpha => state.alpha[j.min(jn.saturating_sub(1)).min(state.alpha.len() - 1)],
                Field::U => state.u[j],
                Field::C => state.c[j],
                Field::Radius => unreachable!(),
            };
            (x, y)
        })
        .collect()
}

fn polyline(out: &mut String, frame: &Frame, points: &[(f64, f64)], stroke: &str) {
    out.push_str("  <polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"");
    out.push_str(stroke);
    out.push_str("\" points=\"");
    for (i, &(x, y)) in points.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{:.2},{:.2}", frame.px(x), frame.py(y));
    }
    out.push_str("\"/>\n");
}

fn axes(out: &mut String, frame: &Frame, xlabel: &str, ylabel: &str) {
    let (x0, x1) = (frame.px(frame.x.0), frame.px(frame.x.1));
    let (y0, y1) = (frame.py(frame.y.0), frame.py(frame.y.1));
    let _ = writeln!(
        out,
        "  <rect x=\"{x0:.2}\" y=\"{y1:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\"/>",
        x1 - x0,
        y0 - y1
    );
    for (v, anchor, x, y) in [
        (frame.x.0, "middle", x0, y0 + 18.0),
        (frame.x.1, "middle", x1, y0 + 18.0),
        (frame.y.0, "end", x0 - 6.0, y0 + 4.0),
        (frame.y.1, "end", x0 - 6.0, y1 + 4.0),
    ] {
        let _ = writeln!(
            out,
            "  <text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"12\" text-anchor=\"{anchor}\">{v:.4}</text>"
        );
    }
    let _ = writeln!(
        out,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{xlabel}</text>",
        0.5 * (x0 + x1),
        HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"18\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{ylabel}</text>",
        0.5 * (y0 + y1),
        0.5 * (y0 + y1)
    );
}

/// One polyline per snapshot over its tumour domain, or the radius history.
pub fn render_svg(trajectory: &Trajectory, field: Field) -> String {
    let h = trajectory.config.h;
    let delta = trajectory.config.delta;
    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    if field == Field::Radius {
        let series = trajectory.radius_series();
        let stride = series.len().div_ceil(MAX_POINTS).max(1);
        let mut points: Vec<_> = series.iter().copied().step_by(stride).collect();
        if let Some(&last) = series.last() {
            if points.last() != Some(&last) {
                points.push(last);
            }
        }
        let frame = Frame::new(points.iter().copied());
        axes(&mut out, &frame, "t", "radius");
        polyline(&mut out, &frame, &points, "#2040c0");
    } else {
        let curves: Vec<(f64, Vec<(f64, f64)>)> = trajectory
            .snapshots
            .iter()
            .map(|s| (s.time(delta), profile(s, field, h)))
            .collect();
        let frame = Frame::new(curves.iter().flat_map(|(_, c)| c.iter().copied()));
        axes(&mut out, &frame, "x", field.name());
        let t_end = curves.last().map_or(0.0, |c| c.0).max(f64::MIN_POSITIVE);
        for (i, (t, points)) in curves.iter().enumerate() {
            let stroke = colour(t / t_end);
            polyline(&mut out, &frame, points, &stroke);
            let y = TOP + 16.0 * i as f64;
            let x = WIDTH - RIGHT + 12.0;
            let _ = writeln!(
                out,
                "  <line x1=\"{x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"{stroke}\" stroke-width=\"2\"/>",
                x + 20.0
            );
            let _ = writeln!(
                out,
                "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">t = {t:.3}</text>",
                x + 26.0,
                y + 4.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
