//! SVG drawing of a quadrangle next to its dual.

use std::fmt::Write;

use quadual::{MarkedQuadrangle, Point2};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub show_labels: bool,
    pub show_diagonals: bool,
    /// Multiplies the base stroke width.
    pub stroke_scale: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            width: 800,
            height: 400,
            show_labels: true,
            show_diagonals: false,
            stroke_scale: 1.0,
        }
    }
}

/// Padding on each side of the drawing, as a fraction of its larger extent.
const PADDING: f64 = 0.1;

/// Nine significant digits, no exponent for ordinary magnitudes.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = 8 - magnitude;
    let s = if (0..=20).contains(&decimals) {
        let s = format!("{:.*}", decimals as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else if decimals < 0 {
        let scale = 10f64.powi(-decimals);
        format!("{:.0}", (x / scale).round() * scale)
    } else {
        format!("{x:.8e}")
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// SVG y grows downward.
fn flip(p: Point2) -> Point2 {
    Point2::new(p.x, -p.y)
}

struct Panel<'a> {
    vertices: [Point2; 4],
    names: [&'a str; 4],
    color: &'a str,
}

fn draw_panel(out: &mut String, panel: &Panel, spec: &RenderSpec, unit: f64) {
    let v = panel.vertices;
    let stroke = fmt_num(0.004 * unit * spec.stroke_scale);
    let points: Vec<String> = v.iter().map(|p| format!("{},{}", fmt_num(p.x), fmt_num(p.y))).collect();
    let _ = writeln!(out, "  <g stroke=\"{}\" stroke-width=\"{stroke}\">", panel.color);
    let _ = writeln!(out, "    <polygon points=\"{}\" fill=\"none\"/>", points.join(" "));
    if spec.show_diagonals {
        for (i, j) in [(0, 2), (1, 3)] {
            let _ = writeln!(
                out,
                "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-dasharray=\"{} {}\"/>",
                fmt_num(v[i].x),
                fmt_num(v[i].y),
                fmt_num(v[j].x),
                fmt_num(v[j].y),
                fmt_num(0.02 * unit),
                fmt_num(0.01 * unit),
            );
        }
    }
    for p in v {
        let _ = writeln!(
            out,
            "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            fmt_num(p.x),
            fmt_num(p.y),
            fmt_num(0.008 * unit),
            panel.color
        );
    }
    let _ = writeln!(out, "  </g>");
    if spec.show_labels {
        let size = fmt_num(0.04 * unit);
        for (p, name) in v.iter().zip(panel.names) {
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\" font-size=\"{size}\" fill=\"{}\">{name}</text>",
                fmt_num(p.x + 0.01 * unit),
                fmt_num(p.y - 0.01 * unit),
                panel.color
            );
        }
    }
}

/// `q` on the left, `dual` on the right, both as given (callers normally pass
/// canonical poses). Returns a standalone SVG document.
pub fn render_svg(q: &MarkedQuadrangle, dual: &MarkedQuadrangle, label: Option<&str>, spec: &RenderSpec) -> String {
    let left = q.vertices().map(flip);
    let right0 = dual.vertices().map(flip);

    let bounds = |v: &[Point2]| {
        v.iter().fold(
            (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
            |(x0, y0, x1, y1), p| (x0.min(p.x), y0.min(p.y), x1.max(p.x), y1.max(p.y)),
        )
    };
    let (lx0, _, lx1, _) = bounds(&left);
    let (rx0, _, _, _) = bounds(&right0);
    let gap = 0.25 * (lx1 - lx0).max(0.5);
    let dx = lx1 + gap - rx0;
    let right = right0.map(|p| Point2::new(p.x + dx, p.y));

    let all: Vec<Point2> = left.iter().chain(right.iter()).copied().collect();
    let (x0, y0, x1, y1) = bounds(&all);
    let unit = (x1 - x0).max(y1 - y0);
    let pad = PADDING * unit;
    let view = [x0 - pad, y0 - pad, x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad];

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"{}\">",
        spec.width,
        spec.height,
        view.map(fmt_num).join(" ")
    );
    if let Some(label) = label {
        let _ = writeln!(out, "  <title>{}</title>", escape(label));
    }
    draw_panel(
        &mut out,
        &Panel {
            vertices: left,
            names: ["A", "B", "C", "D"],
            color: "#1f4e99",
        },
        spec,
        unit,
    );
    draw_panel(
        &mut out,
        &Panel {
            vertices: right,
            names: ["K", "L", "M", "N"],
            color: "#b3261e",
        },
        spec,
        unit,
    );
    out.push_str("</svg>\n");
    out
}
