//! SVG export of planar drawings and projected diagrams. Coordinates are
//! converted to decimals only here.

use std::fmt::Write;

use cgs_core::embedding::{extract_crossings, Crossing, PlanarDrawing, Strand};
use cgs_core::geometry::{Point2, Rational};
use num_traits::ToPrimitive;

const SIZE: f64 = 800.0;
const PAD: f64 = 40.0;
const GAP: f64 = 7.0;

fn dec(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(d: &PlanarDrawing) -> Frame {
        let pts: Vec<(f64, f64)> = d
            .positions()
            .iter()
            .chain(d.routes().values().flatten())
            .map(|p| (dec(&p.x), dec(&p.y)))
            .collect();
        let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        if pts.is_empty() {
            return Frame { min_x: 0.0, max_y: 0.0, scale: 1.0 };
        }
        let span = (max_x - min_x).max(max_y - min_y);
        let scale = if span > 0.0 { (SIZE - 2.0 * PAD) / span } else { 1.0 };
        Frame { min_x, max_y, scale }
    }

    fn map(&self, p: &Point2) -> (f64, f64) {
        (PAD + (dec(&p.x) - self.min_x) * self.scale, PAD + (self.max_y - dec(&p.y)) * self.scale)
    }
}

fn unit(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len = (dx * dx + dy * dy).sqrt().max(f64::MIN_POSITIVE);
    (dx / len, dy / len)
}

fn short_line(out: &mut String, class: &str, c: (f64, f64), dir: (f64, f64), half: f64) {
    let _ = writeln!(
        out,
        r#"  <line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
        c.0 - dir.0 * half,
        c.1 - dir.1 * half,
        c.0 + dir.0 * half,
        c.1 + dir.1 * half
    );
}

/// SVG of a drawing. With `crossings` carrying over/under data, the lower
/// strand gets a gap at each crossing; otherwise the crossings of the
/// drawing are marked with dots.
pub fn render_svg(d: &PlanarDrawing, crossings: Option<&[Crossing]>) -> String {
    let frame = Frame::fit(d);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str(
        "  <style>polyline{fill:none;stroke:#222;stroke-width:2}.gap{stroke:#fff;stroke-width:8}\
         .over{stroke:#222;stroke-width:2}.crossing{fill:#c00}.vertex{fill:#1f5fbf}\
         text{font:14px sans-serif}</style>\n",
    );
    out.push_str(r##"  <rect width="100%" height="100%" fill="#fff"/>"##);
    out.push('\n');
    for (e, route) in d.routes() {
        let pts: Vec<String> = route
            .iter()
            .map(|p| {
                let (x, y) = frame.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(out, r#"  <polyline data-edge="{}-{}" points="{}"/>"#, e.lo(), e.hi(), pts.join(" "));
    }

    let owned;
    let crossings = match crossings {
        Some(c) => c,
        None => {
            owned = extract_crossings(d).unwrap_or_default();
            &owned
        }
    };
    for c in crossings {
        let at = frame.map(&c.point);
        match c.upper {
            Some(upper) => {
                let (over, under) = match upper {
                    Strand::First => (c.first, c.second),
                    Strand::Second => (c.second, c.first),
                };
                let dir = |s| {
                    let (p, q) = d.side(s);
                    unit(frame.map(p), frame.map(q))
                };
                short_line(&mut out, "gap", at, dir(under), GAP);
                short_line(&mut out, "over", at, dir(over), GAP + 3.0);
            }
            None => {
                let _ = writeln!(out, r#"  <circle class="crossing" cx="{:.2}" cy="{:.2}" r="3"/>"#, at.0, at.1);
            }
        }
    }
    for (v, p) in d.positions().iter().enumerate() {
        let (x, y) = frame.map(p);
        let _ = writeln!(out, r#"  <circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="5"/>"#);
        let _ = writeln!(out, r#"  <text x="{:.2}" y="{:.2}">{v}</text>"#, x + 7.0, y - 7.0);
    }
    out.push_str("</svg>\n");
    out
}
