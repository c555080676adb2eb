//! SVG 1.1 rendering of a [`ProjectionScene`].

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::projection::ProjectionScene;

const WIDTH: f64 = 640.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

/// Deterministic SVG text: one `<path class="component">` per component,
/// broken at under-crossings, and the w-axis as a dotted path.
pub fn to_svg(scene: &ProjectionScene) -> String {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in scene.curves.iter().flatten().chain(&scene.axis) {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if !lo[0].is_finite() {
        lo = [-1.0, -1.0];
        hi = [1.0, 1.0];
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let margin = 0.05 * extent;
    let scale = WIDTH / (extent + 2.0 * margin);
    let height = ((hi[1] - lo[1]) + 2.0 * margin) * scale;
    // Page y points up; SVG y points down.
    let map = |p: [f64; 2]| ((p[0] - lo[0] + margin) * scale, (hi[1] + margin - p[1]) * scale);
    let gap = 0.012 * extent;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.3} {height:.3}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let mut d = String::new();
    for (i, p) in scene.axis.iter().enumerate() {
        let (x, y) = map(*p);
        let _ = write!(d, "{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" });
    }
    let _ = writeln!(
        out,
        r#"<path class="w-axis" d="{}Z" fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="2 4"/>"#,
        d
    );

    for (c, pts) in scene.curves.iter().enumerate() {
        let n = pts.len();
        let cut: Vec<bool> = (0..n)
            .map(|i| {
                let t = TAU * i as f64 / n as f64;
                scene.crossings.iter().any(|x| {
                    x.under == c && {
                        let dt = (t - x.under_t).rem_euclid(TAU);
                        dt.min(TAU - dt) * x.under_speed < gap
                    }
                })
            })
            .collect();
        let mut d = String::new();
        match cut.iter().position(|&x| x) {
            None => {
                for (i, p) in pts.iter().enumerate() {
                    let (x, y) = map(*p);
                    let _ = write!(d, "{}{x:.3} {y:.3} ", if i == 0 { "M" } else { "L" });
                }
                d.push('Z');
            }
            Some(first_cut) => {
                // Walk once around starting just after a gap.
                let mut pen_down = false;
                for k in 1..=n {
                    let i = (first_cut + k) % n;
                    if cut[i] {
                        pen_down = false;
                        continue;
                    }
                    let (x, y) = map(pts[i]);
                    let _ = write!(d, "{}{x:.3} {y:.3} ", if pen_down { "L" } else { "M" });
                    pen_down = true;
                }
            }
        }
        let _ = writeln!(
            out,
            r#"<path class="component" data-index="{c}" d="{}" fill="none" stroke="{}" stroke-width="2.5" stroke-linejoin="round"/>"#,
            d.trim_end(),
            PALETTE[c % PALETTE.len()]
        );
    }
    out.push_str("</svg>\n");
    out
}
