//! Planar knot diagrams, built either from the grid diagram of an arc
//! presentation or from an exact generic projection of a lattice polygon.
//!
//! Edges are numbered along the traversal: the diagram visits `2n` crossing
//! passages in order, and edge `e` runs from passage `e` to passage `e + 1`
//! (mod `2n`).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_rational::Ratio;
use thiserror::Error;

use crate::arc::ArcPresentation;
use crate::lattice::{LatticePolygon, Point3};

type Q = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
    /// `+1` for a right-handed crossing, `-1` otherwise.
    pub sign: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    gauss: Vec<Passage>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("no generic projection direction among {0} candidates")]
    NoGenericDirection(usize),
    #[error("polygon is not closed")]
    OpenPolygon,
    #[error("malformed PD code: {0}")]
    BadPd(String),
}

impl PlanarDiagram {
    pub fn unknot() -> Self {
        PlanarDiagram {
            crossings: Vec::new(),
            gauss: Vec::new(),
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.gauss.len()
    }

    /// Passages in traversal order.
    pub fn gauss_sequence(&self) -> &[Passage] {
        &self.gauss
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Same diagram with every crossing switched.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                under_in: c.over_in,
                under_out: c.over_out,
                over_in: c.under_in,
                over_out: c.under_out,
                sign: -c.sign,
            })
            .collect();
        let gauss = self
            .gauss
            .iter()
            .map(|p| Passage {
                crossing: p.crossing,
                over: !p.over,
            })
            .collect();
        PlanarDiagram { crossings, gauss }
    }

    /// PD tuple `(a, b, c, d)` of a crossing with 1-based edge labels,
    /// counterclockwise from the incoming under-strand.
    pub fn pd_tuple(&self, idx: usize) -> [usize; 4] {
        let c = &self.crossings[idx];
        let (b, d) = if c.sign > 0 {
            (c.over_out, c.over_in)
        } else {
            (c.over_in, c.over_out)
        };
        [c.under_in + 1, b + 1, c.under_out + 1, d + 1]
    }

    /// One `X(a,b,c,d)` line per crossing.
    pub fn to_pd(&self) -> String {
        let mut s = String::new();
        for idx in 0..self.crossings.len() {
            let [a, b, c, d] = self.pd_tuple(idx);
            let _ = writeln!(s, "X({a},{b},{c},{d})");
        }
        s
    }

    /// Parses PD text (`X(a,b,c,d)` or `X[a,b,c,d]` entries, 1-based labels,
    /// anything else ignored as separators).
    pub fn from_pd(text: &str) -> Result<Self, DiagramError> {
        let mut tuples = Vec::new();
        let mut rest = text;
        while let Some(pos) = rest.find('X') {
            rest = &rest[pos + 1..];
            let open = rest
                .find(['(', '['])
                .ok_or_else(|| DiagramError::BadPd("missing '('".into()))?;
            let close = rest
                .find([')', ']'])
                .ok_or_else(|| DiagramError::BadPd("missing ')'".into()))?;
            let nums: Vec<usize> = rest[open + 1..close]
                .split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| DiagramError::BadPd(e.to_string()))?;
            let [a, b, c, d] = nums[..] else {
                return Err(DiagramError::BadPd(format!(
                    "expected 4 labels, got {}",
                    nums.len()
                )));
            };
            tuples.push([a, b, c, d]);
            rest = &rest[close + 1..];
        }
        Self::from_pd_tuples(&tuples)
    }

    pub fn from_pd_tuples(tuples: &[[usize; 4]]) -> Result<Self, DiagramError> {
        let n = tuples.len();
        if n == 0 {
            return Ok(Self::unknot());
        }
        let edges = 2 * n;
        let succ = |e: usize| if e == edges { 1 } else { e + 1 };
        let mut crossings = Vec::with_capacity(n);
        for t in tuples {
            if t.iter().any(|&e| e == 0 || e > edges) {
                return Err(DiagramError::BadPd(format!("label out of range in {t:?}")));
            }
            let [a, b, c, d] = *t;
            if succ(a) != c {
                return Err(DiagramError::BadPd(format!(
                    "under strand {a}->{c} is not consecutive"
                )));
            }
            let (over_in, over_out, sign) = if succ(d) == b {
                (d, b, 1)
            } else if succ(b) == d {
                (b, d, -1)
            } else {
                return Err(DiagramError::BadPd(format!(
                    "over strand {b},{d} is not consecutive"
                )));
            };
            crossings.push(Crossing {
                under_in: a - 1,
                under_out: c - 1,
                over_in: over_in - 1,
                over_out: over_out - 1,
                sign,
            });
        }
        // passage q sits between edge q-1 and edge q
        let mut at: Vec<Option<Passage>> = vec![None; edges];
        for (idx, c) in crossings.iter().enumerate() {
            for (edge_out, over) in [(c.under_out, false), (c.over_out, true)] {
                if at[edge_out]
                    .replace(Passage {
                        crossing: idx,
                        over,
                    })
                    .is_some()
                {
                    return Err(DiagramError::BadPd(format!(
                        "edge {} leaves two crossings",
                        edge_out + 1
                    )));
                }
            }
        }
        let gauss = at.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| {
            DiagramError::BadPd("edge labels are not a single closed walk".into())
        })?;
        Ok(PlanarDiagram { crossings, gauss })
    }
}

/// A crossing found geometrically, before assembly: positions are along the
/// traversal direction of each segment, in `(0, 1)`.
struct RawCrossing {
    over_seg: usize,
    over_pos: Q,
    under_seg: usize,
    under_pos: Q,
}

/// Orders crossing events along the closed curve and labels edges. `dirs`
/// are the traversal direction vectors of the segments, used for signs.
fn assemble(dirs: &[(i128, i128)], raw: &[RawCrossing]) -> PlanarDiagram {
    let mut events: Vec<(usize, Q, usize, bool)> = Vec::with_capacity(2 * raw.len());
    for (id, r) in raw.iter().enumerate() {
        events.push((r.over_seg, r.over_pos, id, true));
        events.push((r.under_seg, r.under_pos, id, false));
    }
    events.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));

    // crossings renumbered by first appearance along the traversal
    let mut renumber: HashMap<usize, usize> = HashMap::new();
    for ev in &events {
        let next = renumber.len();
        renumber.entry(ev.2).or_insert(next);
    }
    let edges = events.len();
    let mut slots = vec![[usize::MAX; 4]; raw.len()];
    let gauss: Vec<Passage> = events
        .iter()
        .enumerate()
        .map(|(q, &(_, _, id, over))| {
            let c = renumber[&id];
            let (e_in, e_out) = ((q + edges - 1) % edges, q);
            if over {
                slots[c][2] = e_in;
                slots[c][3] = e_out;
            } else {
                slots[c][0] = e_in;
                slots[c][1] = e_out;
            }
            Passage { crossing: c, over }
        })
        .collect();

    let mut crossings = vec![
        Crossing {
            under_in: 0,
            under_out: 0,
            over_in: 0,
            over_out: 0,
            sign: 0
        };
        raw.len()
    ];
    for (id, r) in raw.iter().enumerate() {
        let c = renumber[&id];
        let (o, u) = (dirs[r.over_seg], dirs[r.under_seg]);
        let cross = o.0 * u.1 - o.1 * u.0;
        debug_assert!(cross != 0);
        let [ui, uo, oi, oo] = slots[c];
        crossings[c] = Crossing {
            under_in: ui,
            under_out: uo,
            over_in: oi,
            over_out: oo,
            sign: if cross > 0 { 1 } else { -1 },
        };
    }
    PlanarDiagram { crossings, gauss }
}

/// Grid diagram of an arc presentation: page `k` is a horizontal segment in
/// row `k`, binding index `i` a vertical segment in column `i`, and vertical
/// strands always pass over. The walk starts on the page-1 arc heading to
/// its smaller binding index.
pub fn arc_to_planar(p: &ArcPresentation) -> PlanarDiagram {
    let a = p.arc_index();
    // polyline corners as (column, row)
    let mut corners: Vec<(i128, i128)> = Vec::with_capacity(2 * a);
    let (mut page, mut col) = (1usize, p.arc(1).0);
    let (_, j) = p.arc(1);
    corners.push((j as i128, 1));
    for _ in 0..a {
        corners.push((col as i128, page as i128));
        let (k1, k2) = p.incident_pages(col);
        let next_page = if k1 == page { k2 } else { k1 };
        corners.push((col as i128, next_page as i128));
        page = next_page;
        col = p.far_end(page, col);
        if page == 1 {
            break;
        }
    }
    // corners: start, then alternating horizontal/vertical ends; last == first
    corners.pop();
    let m = corners.len();
    let segs: Vec<((i128, i128), (i128, i128))> =
        (0..m).map(|k| (corners[k], corners[(k + 1) % m])).collect();
    let dirs: Vec<(i128, i128)> = segs.iter().map(|(s, e)| (e.0 - s.0, e.1 - s.1)).collect();

    let mut raw = Vec::new();
    for (vi, &(vs, ve)) in segs.iter().enumerate() {
        if vs.0 != ve.0 {
            continue;
        }
        let col = vs.0;
        let (r_lo, r_hi) = (vs.1.min(ve.1), vs.1.max(ve.1));
        for (hi_idx, &(hs, he)) in segs.iter().enumerate() {
            if hs.1 != he.1 {
                continue;
            }
            let row = hs.1;
            let (c_lo, c_hi) = (hs.0.min(he.0), hs.0.max(he.0));
            if r_lo < row && row < r_hi && c_lo < col && col < c_hi {
                raw.push(RawCrossing {
                    over_seg: vi,
                    over_pos: Ratio::new(row - vs.1, ve.1 - vs.1),
                    under_seg: hi_idx,
                    under_pos: Ratio::new(col - hs.0, he.0 - hs.0),
                });
            }
        }
    }
    assemble(&dirs, &raw)
}

/// Maximum number of projection directions tried.
pub const PROJECTION_CANDIDATES: usize = 64;

/// Oblique parallel projection along `(1, B, B^2)` onto the x-y plane,
/// scaled by `B^2` so images stay integral: `(B^2 x - z, B^2 y - B z)`.
fn project_point(p: Point3, b: i128) -> (i128, i128) {
    let (x, y, z) = (p[0] as i128, p[1] as i128, p[2] as i128);
    (b * b * x - z, b * b * y - b * z)
}

fn cross2(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

fn sub2(a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
    (a.0 - b.0, a.1 - b.1)
}

/// Whether `p` lies on the closed segment `s`-`e` (collinear and in range).
fn on_segment(p: (i128, i128), s: (i128, i128), e: (i128, i128)) -> bool {
    cross2(sub2(e, s), sub2(p, s)) == 0
        && p.0 >= s.0.min(e.0)
        && p.0 <= s.0.max(e.0)
        && p.1 >= s.1.min(e.1)
        && p.1 <= s.1.max(e.1)
}

/// Projection direction `(1, B, B^2)` chosen for `poly`, if any candidate is generic.
pub fn projection_direction(poly: &LatticePolygon) -> Result<[i64; 3], DiagramError> {
    let verts = poly.vertices().ok_or(DiagramError::OpenPolygon)?;
    let start = poly.coordinate_span() as i128 + 2;
    for b in start..start + PROJECTION_CANDIDATES as i128 {
        if crossings_if_generic(&verts, b).is_some() {
            return Ok([1, b as i64, (b * b) as i64]);
        }
    }
    Err(DiagramError::NoGenericDirection(PROJECTION_CANDIDATES))
}

/// Exact generic projection to a planar diagram. Candidate directions are
/// `(1, B, B^2)` for `B = span + 2, span + 3, ...`; the first one with no
/// coinciding vertex images, no vertex on a foreign edge, no collinear edge
/// overlap, and no triple point is used. Higher z passes over.
pub fn project_polygon(poly: &LatticePolygon) -> Result<PlanarDiagram, DiagramError> {
    let verts = poly.vertices().ok_or(DiagramError::OpenPolygon)?;
    let start = poly.coordinate_span() as i128 + 2;
    for b in start..start + PROJECTION_CANDIDATES as i128 {
        if let Some(raw) = crossings_if_generic(&verts, b) {
            let m = verts.len();
            let dirs: Vec<(i128, i128)> = (0..m)
                .map(|k| {
                    sub2(
                        project_point(verts[(k + 1) % m], b),
                        project_point(verts[k], b),
                    )
                })
                .collect();
            return Ok(assemble(&dirs, &raw));
        }
    }
    Err(DiagramError::NoGenericDirection(PROJECTION_CANDIDATES))
}

fn crossings_if_generic(verts: &[Point3], b: i128) -> Option<Vec<RawCrossing>> {
    let m = verts.len();
    let pts: Vec<(i128, i128)> = verts.iter().map(|&v| project_point(v, b)).collect();
    let seg = |k: usize| (pts[k], pts[(k + 1) % m]);

    let distinct: BTreeSet<(i128, i128)> = pts.iter().copied().collect();
    if distinct.len() != m {
        return None;
    }
    for (vi, &p) in pts.iter().enumerate() {
        for k in 0..m {
            if k == vi || (k + 1) % m == vi {
                continue;
            }
            let (s, e) = seg(k);
            if on_segment(p, s, e) {
                return None;
            }
        }
    }

    let mut raw = Vec::new();
    let mut points: BTreeSet<(Q, Q)> = BTreeSet::new();
    for i in 0..m {
        for j in i + 1..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            let (p0, p1) = seg(i);
            let (q0, q1) = seg(j);
            let (r, s) = (sub2(p1, p0), sub2(q1, q0));
            let denom = cross2(r, s);
            if denom == 0 {
                if !adjacent && cross2(r, sub2(q0, p0)) == 0 {
                    // collinear images: overlap would already put a vertex on an edge,
                    // but reject any shared line outright
                    let overlaps = on_segment(q0, p0, p1)
                        || on_segment(q1, p0, p1)
                        || on_segment(p0, q0, q1)
                        || on_segment(p1, q0, q1);
                    if overlaps {
                        return None;
                    }
                }
                continue;
            }
            if adjacent {
                continue;
            }
            let qp = sub2(q0, p0);
            let u = Ratio::new(cross2(qp, s), denom);
            let v = Ratio::new(cross2(qp, r), denom);
            let zero = Q::from_integer(0);
            let one = Q::from_integer(1);
            if u <= zero || u >= one || v <= zero || v >= one {
                continue;
            }
            let at = (
                Q::from_integer(p0.0) + u * Q::from_integer(r.0),
                Q::from_integer(p0.1) + u * Q::from_integer(r.1),
            );
            if !points.insert(at) {
                return None;
            }
            let depth = |k: usize, t: Q| {
                let (z0, z1) = (verts[k][2] as i128, verts[(k + 1) % m][2] as i128);
                Q::from_integer(z0) + t * Q::from_integer(z1 - z0)
            };
            let (zi, zj) = (depth(i, u), depth(j, v));
            let (over_seg, over_pos, under_seg, under_pos) = match zi.cmp(&zj) {
                Ordering::Greater => (i, u, j, v),
                Ordering::Less => (j, v, i, u),
                // the polygon meets itself; no direction can fix that
                Ordering::Equal => return None,
            };
            raw.push(RawCrossing {
                over_seg,
                over_pos,
                under_seg,
                under_pos,
            });
        }
    }
    Some(raw)
}
