//! SVG drawings of a triangle and its two bisectors in the Poincaré disk.
//!
//! The triangle is embedded with `A` at the centre and then rotated so the
//! bisector of `A` points straight down, which puts `B` at the lower left
//! and `C` at the lower right. The unit disk fills a 1000×1000 viewport with
//! a 2% margin. Numbers are written with six significant digits, so the
//! output is byte-for-byte reproducible.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::path::Path;

use crate::cevian::BisectorData;
use crate::disk::{embed_triangle, geodesic_arc, geodesic_point, disk_distance, ArcKind, DiskPoint};
use crate::error::Result;
use crate::triangle::Triangle;

const SIZE: f64 = 1000.0;
const HALF: f64 = SIZE / 2.0;
const DISK_RADIUS: f64 = HALF * 0.98;
const LABEL_OFFSET: f64 = 18.0;

/// Formats `x` with six significant digits, trailing zeros dropped.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn screen(p: &DiskPoint) -> (f64, f64) {
    (HALF + DISK_RADIUS * p.x(), HALF - DISK_RADIUS * p.y())
}

fn path_data(p: &DiskPoint, q: &DiskPoint) -> Result<String> {
    let (x1, y1) = screen(p);
    let (x2, y2) = screen(q);
    let arc = geodesic_arc(p, q)?;
    Ok(match arc.kind {
        ArcKind::Diameter => format!(
            "M {} {} L {} {}",
            fmt_sig6(x1),
            fmt_sig6(y1),
            fmt_sig6(x2),
            fmt_sig6(y2)
        ),
        ArcKind::Circle { center, radius } => {
            // centre to the left of p -> q means counterclockwise in disk
            // coordinates, which is the positive sweep once y is flipped
            let left = (q.x() - p.x()) * (center.1 - p.y()) - (q.y() - p.y()) * (center.0 - p.x());
            let sweep = u8::from(left > 0.0);
            let r = fmt_sig6(DISK_RADIUS * radius);
            format!(
                "M {} {} A {r} {r} 0 0 {sweep} {} {}",
                fmt_sig6(x1),
                fmt_sig6(y1),
                fmt_sig6(x2),
                fmt_sig6(y2)
            )
        }
    })
}

/// Screen position for a label near `anchor`, pushed away from `centre`.
fn label_at(anchor: (f64, f64), centre: (f64, f64), offset: f64) -> (f64, f64) {
    let (dx, dy) = (anchor.0 - centre.0, anchor.1 - centre.1);
    let len = dx.hypot(dy);
    if len == 0.0 {
        return (anchor.0, anchor.1 - offset);
    }
    (anchor.0 + offset * dx / len, anchor.1 + offset * dy / len)
}

fn midpoint(p: &DiskPoint, q: &DiskPoint) -> Result<DiskPoint> {
    geodesic_point(p, q, 0.5 * disk_distance(p, q))
}

/// Disk positions of the drawn points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureLayout {
    pub a: DiskPoint,
    pub b: DiskPoint,
    pub c: DiskPoint,
    /// `B′`, at distance `u` from `A` along `AC`.
    pub foot_b: DiskPoint,
    /// `C′`, at distance `v` from `A` along `AB`.
    pub foot_c: DiskPoint,
}

pub fn layout(t: &Triangle, d: &BisectorData) -> Result<FigureLayout> {
    let e = embed_triangle(t)?;
    let turn = -FRAC_PI_2 - 0.5 * t.angles().a();
    let a = e.a.rotated(turn);
    let b = e.b.rotated(turn);
    let c = e.c.rotated(turn);
    Ok(FigureLayout {
        a,
        b,
        c,
        foot_b: geodesic_point(&a, &c, d.a_to_foot_b)?,
        foot_c: geodesic_point(&a, &b, d.a_to_foot_c)?,
    })
}

/// Renders the figure as an SVG document.
pub fn svg_string(t: &Triangle, d: &BisectorData) -> Result<String> {
    let FigureLayout { a, b, c, foot_b, foot_c } = layout(t, d)?;

    let (sa, sb, sc) = (screen(&a), screen(&b), screen(&c));
    let centre = ((sa.0 + sb.0 + sc.0) / 3.0, (sa.1 + sb.1 + sc.1) / 3.0);

    let mut out = String::new();
    let size = fmt_sig6(SIZE);
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        out,
        r##"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="#888888" stroke-width="1.5"/>"##,
        fmt_sig6(HALF),
        fmt_sig6(HALF),
        fmt_sig6(DISK_RADIUS)
    );

    let _ = writeln!(out, r##"<g fill="none" stroke="#000000" stroke-width="2">"##);
    for (name, p, q) in [("AB", &a, &b), ("BC", &b, &c), ("CA", &c, &a)] {
        let _ = writeln!(out, r#"<path id="side-{name}" d="{}"/>"#, path_data(p, q)?);
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r##"<g fill="none" stroke="#1f5fbf" stroke-width="1.5" stroke-dasharray="6 4">"##
    );
    let _ = writeln!(out, r#"<path id="bisector-B" d="{}"/>"#, path_data(&b, &foot_b)?);
    let _ = writeln!(out, r#"<path id="bisector-C" d="{}"/>"#, path_data(&c, &foot_c)?);
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g fill="#000000">"##);
    for p in [&a, &b, &c, &foot_b, &foot_c] {
        let (x, y) = screen(p);
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3"/>"#, fmt_sig6(x), fmt_sig6(y));
    }
    let _ = writeln!(out, "</g>");

    let mut labels: Vec<(&str, (f64, f64))> = Vec::new();
    for (text, p) in [("A", &a), ("B", &b), ("C", &c), ("B′", &foot_b), ("C′", &foot_c)] {
        labels.push((text, label_at(screen(p), centre, LABEL_OFFSET)));
    }
    for (text, p, q) in [("u", &a, &foot_b), ("U", &foot_b, &c), ("v", &a, &foot_c), ("V", &foot_c, &b)] {
        labels.push((text, label_at(screen(&midpoint(p, q)?), centre, LABEL_OFFSET)));
    }
    // half-angle marks sit just inside the vertex, along the bisector
    for (text, vertex, foot) in [("β", &b, &foot_b), ("γ", &c, &foot_c)] {
        let inside = geodesic_point(vertex, foot, 0.15 * disk_distance(vertex, foot))?;
        labels.push((text, screen(&inside)));
    }

    let _ = writeln!(
        out,
        r##"<g font-family="serif" font-size="22" text-anchor="middle" dominant-baseline="middle" fill="#000000">"##
    );
    for (text, (x, y)) in labels {
        let _ = writeln!(out, r#"<text x="{}" y="{}">{text}</text>"#, fmt_sig6(x), fmt_sig6(y));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

/// Writes [`svg_string`] to `path`.
pub fn render_svg(t: &Triangle, d: &BisectorData, path: &Path) -> Result<()> {
    let svg = svg_string(t, d)?;
    std::fs::write(path, svg)?;
    Ok(())
}
