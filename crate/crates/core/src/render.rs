//! SVG and Wavefront OBJ exports of lattice polygons.

use std::fmt::Write as _;

use num_rational::Ratio;

use crate::lattice::{LatticePolygon, Point3};

type Q = Ratio<i128>;

/// Screen images of the unit axes: x to the right, y down-left at 150
/// degrees (cos approximated by -13/15), z straight up.
const X_AXIS: (i128, i128) = (30, 0);
const Y_AXIS: (i128, i128) = (-26, 15);
const Z_AXIS: (i128, i128) = (0, -30);
/// Kernel of the screen map; larger dot product is nearer the viewer.
const VIEW: [i128; 3] = [26, 30, 15];
const GAP: f64 = 7.0;
const MARGIN: f64 = 20.0;

fn screen(p: Point3) -> (i128, i128) {
    let (x, y, z) = (p[0] as i128, p[1] as i128, p[2] as i128);
    (
        x * X_AXIS.0 + y * Y_AXIS.0 + z * Z_AXIS.0,
        x * X_AXIS.1 + y * Y_AXIS.1 + z * Z_AXIS.1,
    )
}

fn depth(p: Point3) -> i128 {
    (0..3).map(|k| p[k] as i128 * VIEW[k]).sum()
}

fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Isometric line drawing, one `<path>` per stick. Where a stick passes
/// behind another in the drawing its path is broken by a short gap; the
/// nearer stick is decided by exact depth comparison.
pub fn render_svg(poly: &LatticePolygon) -> String {
    let verts = poly.vertices().expect("closed polygon");
    let m = verts.len();
    let pts: Vec<(i128, i128)> = verts.iter().map(|&v| screen(v)).collect();
    let (min_x, max_x) = bounds(pts.iter().map(|p| p.0));
    let (min_y, max_y) = bounds(pts.iter().map(|p| p.1));
    let width = (max_x - min_x) as f64 + 2.0 * MARGIN;
    let height = (max_y - min_y) as f64 + 2.0 * MARGIN;
    let to_svg = |x: f64, y: f64| (x - min_x as f64 + MARGIN, y - min_y as f64 + MARGIN);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    for i in 0..m {
        let (p0, p1) = (pts[i], pts[(i + 1) % m]);
        let d = (p1.0 - p0.0, p1.1 - p0.1);
        let len = ((d.0 * d.0 + d.1 * d.1) as f64).sqrt();
        let mut cuts: Vec<f64> = Vec::new();
        for j in 0..m {
            if j == i || j == (i + 1) % m || (j + 1) % m == i {
                continue;
            }
            let (q0, q1) = (pts[j], pts[(j + 1) % m]);
            let e = (q1.0 - q0.0, q1.1 - q0.1);
            let denom = cross(d, e);
            if denom == 0 {
                continue;
            }
            let w = (q0.0 - p0.0, q0.1 - p0.1);
            let u = Q::new(cross(w, e), denom);
            let v = Q::new(cross(w, d), denom);
            let (zero, one) = (Q::from_integer(0), Q::from_integer(1));
            if u <= zero || u >= one || v <= zero || v >= one {
                continue;
            }
            let along = |a: Point3, b: Point3, t: Q| {
                let (da, db) = (depth(a), depth(b));
                Q::from_integer(da) + t * Q::from_integer(db - da)
            };
            let mine = along(verts[i], verts[(i + 1) % m], u);
            let theirs = along(verts[j], verts[(j + 1) % m], v);
            if mine < theirs {
                cuts.push(*u.numer() as f64 / *u.denom() as f64);
            }
        }
        cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));

        let half = if len > 0.0 { GAP / len } else { 0.0 };
        let mut pieces = Vec::new();
        let mut start = 0.0;
        for c in cuts {
            pieces.push((start, (c - half).max(start)));
            start = (c + half).min(1.0);
        }
        pieces.push((start, 1.0));

        let mut path = String::new();
        for (a, b) in pieces.into_iter().filter(|(a, b)| b > a) {
            let at = |t: f64| to_svg(p0.0 as f64 + t * d.0 as f64, p0.1 as f64 + t * d.1 as f64);
            let (sx, sy) = at(a);
            let (ex, ey) = at(b);
            let _ = write!(path, "M{sx:.2} {sy:.2} L{ex:.2} {ey:.2} ");
        }
        let _ = writeln!(
            out,
            r#"  <path d="{}" fill="none" stroke="black" stroke-width="3" stroke-linecap="round"/>"#,
            path.trim_end()
        );
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(vals: impl Iterator<Item = i128>) -> (i128, i128) {
    vals.fold((i128::MAX, i128::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// `v x y z` per polygon vertex in traversal order and `l i j` per stick.
pub fn render_obj(poly: &LatticePolygon) -> String {
    let verts = poly.vertices().expect("closed polygon");
    let m = verts.len();
    let mut out = String::from("# lattice stick polygon\n");
    for v in &verts {
        let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
    }
    for k in 0..m {
        let _ = writeln!(out, "l {} {}", k + 1, (k + 1) % m + 1);
    }
    out
}
