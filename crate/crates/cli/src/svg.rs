//! SVG drawing of an unfolding. Coordinates are written in model units
//! inside groups whose `transform` maps them to the y-down viewport.

use std::fmt::Write;

use loopfold::geom::V2;
use loopfold::pipeline::Unfolding;
use loopfold::qloop::Side;
use loopfold::unfold::{EdgeSource, LoopEvent, PlanarDevelopment};

const PANEL: f64 = 480.0;
const MARGIN: f64 = 16.0;

fn class_of(s: EdgeSource) -> &'static str {
    match s {
        EdgeSource::Loop { .. } => "q-seg",
        EdgeSource::Base { .. } => "tri-base",
        EdgeSource::Cut { .. } => "cut",
    }
}

fn f4(x: f64) -> String {
    let s = format!("{x:.4}");
    // Avoid "-0.0000".
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".into()
    } else {
        s
    }
}

fn bbox(pts: &[V2]) -> (V2, V2) {
    let mut lo = V2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    for p in pts {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (lo, hi)
}

/// Scale and translation sending `pts` into a `PANEL`-wide box at `left`,
/// flipping y.
pub fn viewport(pts: &[V2], left: f64) -> (f64, f64, f64) {
    let (lo, hi) = bbox(pts);
    let span = (hi - lo).max().max(1e-12);
    let k = (PANEL - 2.0 * MARGIN) / span;
    (k, left + MARGIN - k * lo.x, MARGIN + k * hi.y)
}

fn line(out: &mut String, class: &str, a: V2, b: V2) {
    let _ = writeln!(
        out,
        r#"    <line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        f4(a.x),
        f4(a.y),
        f4(b.x),
        f4(b.y)
    );
}

fn points(pts: &[V2]) -> String {
    pts.iter().map(|p| format!("{},{}", f4(p.x), f4(p.y))).collect::<Vec<_>>().join(" ")
}

fn open_group(out: &mut String, id: &str, (k, tx, ty): (f64, f64, f64)) {
    let _ = writeln!(
        out,
        r#"  <g id="{id}" transform="matrix({} 0 0 {} {} {})">"#,
        f4(k),
        f4(-k),
        f4(tx),
        f4(ty)
    );
}

fn panel(out: &mut String, d: &PlanarDevelopment, events: &[LoopEvent], left: f64) {
    let id = match d.side {
        Side::Left => "left-half",
        Side::Right => "right-half",
    };
    let vp = viewport(&d.vertices, left);
    open_group(out, id, vp);
    // Marker radii in model units, a few pixels on screen.
    let (rx, rr) = (f4(3.0 / vp.0), f4(5.0 / vp.0));
    let _ = writeln!(out, r#"    <polygon class="half" points="{}"/>"#, points(&d.vertices));
    for (i, &s) in d.sources.iter().enumerate() {
        let (a, b) = d.edge(i);
        line(out, class_of(s), a, b);
    }
    for i in 0..d.len() {
        if events[d.corners[i].event].is_x {
            let name = match d.x_images {
                Some((x1, _)) if x1 == i => "x1",
                Some((_, x2)) if x2 == i => "x2",
                _ => "x",
            };
            let p = d.vertices[i];
            let _ = writeln!(
                out,
                r#"    <circle class="x-image" data-name="{name}" cx="{}" cy="{}" r="{rx}"/>"#,
                f4(p.x),
                f4(p.y)
            );
        }
    }
    for i in 0..d.len() {
        if d.turn(i) < -1e-9 {
            let p = d.vertices[i];
            let _ = writeln!(out, r#"    <circle class="reflex" cx="{}" cy="{}" r="{rr}"/>"#, f4(p.x), f4(p.y));
        }
    }
    out.push_str("  </g>\n");
}

/// The joined polygon with provenance classes, then one panel per half.
pub fn render(u: &Unfolding) -> String {
    let poly = &u.polygon;
    let mut out = String::new();
    let width = 3.0 * PANEL;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{PANEL}" viewBox="0 0 {w} {PANEL}">"#,
        w = width
    );
    out.push_str(concat!(
        "  <style>\n",
        "    line, polygon { vector-effect: non-scaling-stroke; stroke-width: 1.5; }\n",
        "    polygon { fill: #f4f1e8; stroke: none; }\n",
        "    .q-seg { stroke: #1f5fa8; } .tri-base { stroke: #c24b2a; } .cut { stroke: #888; stroke-dasharray: 4 3; }\n",
        "    .seam { stroke: #1b8a3a; stroke-width: 3; } .x-image { fill: #1f5fa8; } .reflex { fill: none; stroke: #c24b2a; }\n",
        "  </style>\n"
    ));
    let mut all = poly.vertices.clone();
    all.extend(poly.net.iter().copied());
    open_group(&mut out, "unfolding", viewport(&all, 0.0));
    let _ = writeln!(out, r#"    <polygon class="unfolding" points="{}"/>"#, points(&poly.vertices));
    let n = poly.vertices.len();
    for (i, &(_, s)) in poly.sources.iter().enumerate() {
        line(&mut out, class_of(s), poly.vertices[i], poly.vertices[(i + 1) % n]);
    }
    let m = poly.net.len();
    for (i, &(_, s)) in poly.net_sources.iter().enumerate() {
        if let EdgeSource::Cut { .. } = s {
            line(&mut out, "cut", poly.net[i], poly.net[(i + 1) % m]);
        }
    }
    let (a, b) = poly.seam_segment;
    line(&mut out, "seam", a, b);
    out.push_str("  </g>\n");
    panel(&mut out, &u.devs[0], &u.events, PANEL);
    panel(&mut out, &u.devs[1], &u.events, 2.0 * PANEL);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_four_decimals() {
        assert_eq!(f4(1.0 / 3.0), "0.3333");
        assert_eq!(f4(-0.00001), "0.0000");
        assert_eq!(f4(-2.5), "-2.5000");
    }

    #[test]
    fn viewport_flips_y() {
        let pts = [V2::new(0.0, 0.0), V2::new(2.0, 1.0)];
        let (k, tx, ty) = viewport(&pts, 0.0);
        // Top of the box lands at the margin, bottom below it.
        assert!((ty - k * 1.0 - MARGIN).abs() < 1e-12);
        assert!((tx + k * 2.0 - (PANEL - MARGIN)).abs() < 1e-12);
    }
}
