//! SVG drawings of planar diagrams.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::model::{PlanarDiagram, Sign};
use crate::trace::vertices_of;

#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Width and height of the square canvas in pixels.
    pub size: f64,
    pub opposing_color: String,
    pub twisted_color: String,
    /// Color each corner dot by the tiling vertex it belongs to.
    pub color_vertices: bool,
    pub palette: Vec<String>,
}

impl Default for RenderOptions {
    fn default() -> RenderOptions {
        RenderOptions {
            size: 400.0,
            opposing_color: "#000000".into(),
            twisted_color: "#999999".into(),
            color_vertices: true,
            palette: [
                "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
                "#17becf", "#bcbd22", "#7f7f7f",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        }
    }
}

/// Bend of each chord toward the center; 0 draws straight lines.
const BOW: f64 = 0.35;

pub fn render_svg(d: &PlanarDiagram, opts: &RenderOptions) -> String {
    let n = d.n();
    let s = opts.size;
    let c = s / 2.0;
    let r = 0.4 * s;
    let corner = |i: usize| {
        let t = TAU * i as f64 / n as f64;
        (c + r * t.cos(), c - r * t.sin())
    };
    let mid = |i: usize| {
        let (a, b) = (corner(i), corner((i + 1) % n));
        ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
    };

    let mut color = vec![0usize; n];
    if opts.color_vertices {
        for (k, v) in vertices_of(d).vertices().iter().enumerate() {
            for dc in v.cycle() {
                color[dc.corner] = k;
            }
        }
    }

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s:.0}" height="{s:.0}" viewBox="0 0 {s:.0} {s:.0}">"#
    );
    let points: Vec<String> = (0..n)
        .map(|i| {
            let (x, y) = corner(i);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"  <polygon class="boundary" points="{}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
        points.join(" ")
    );
    for p in d.pairs() {
        let (a, b) = (mid(p.a.0), mid(p.b.0));
        let (qx, qy) = (
            c + BOW * ((a.0 + b.0) / 2.0 - c),
            c + BOW * ((a.1 + b.1) / 2.0 - c),
        );
        let (class, stroke) = match p.sign {
            Sign::Plus => ("opposing", &opts.opposing_color),
            Sign::Minus => ("twisted", &opts.twisted_color),
        };
        let _ = writeln!(
            out,
            r#"  <path class="chord {class}" d="M {:.2} {:.2} Q {qx:.2} {qy:.2} {:.2} {:.2}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    for (i, class) in color.into_iter().enumerate() {
        let (x, y) = corner(i);
        let fill = if opts.color_vertices && !opts.palette.is_empty() {
            opts.palette[class % opts.palette.len()].as_str()
        } else {
            "#000000"
        };
        let _ = writeln!(
            out,
            r#"  <circle class="corner" cx="{x:.2}" cy="{y:.2}" r="4" fill="{fill}"/>"#
        );
        let t = TAU * i as f64 / n as f64;
        let (lx, ly) = (c + 1.12 * r * t.cos(), c - 1.12 * r * t.sin());
        let _ = writeln!(
            out,
            r#"  <text class="label" x="{lx:.2}" y="{ly:.2}" font-size="12" text-anchor="middle" dominant-baseline="middle">{i}</text>"#
        );
    }
    out.push_str("</svg>\n");
    out
}
