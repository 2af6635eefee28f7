//! Lattice stick polygons and the constructions that turn an arc presentation
//! into one: the `3a` stick layout, the two end reductions (`3a - 2`), and
//! the flip-and-lift construction for non-star presentations (`3a - 4`).
//!
//! Binding index `i` sits at `(i, i)` in the x-y plane and page `k` is the
//! z-level `k`. The arc `{i, j}` (`i < j`) on page `k` becomes the x-stick
//! `x in [i, j], y = i` and the y-stick `y in [i, j], x = j`, both at `z = k`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arc::{ArcPresentation, NormalizedNonStar};

pub type Point3 = [i64; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    /// The two fixed coordinate indices, in axis order.
    pub fn fixed_indices(self) -> [usize; 2] {
        match self {
            Axis::X => [1, 2],
            Axis::Y => [0, 2],
            Axis::Z => [0, 1],
        }
    }

    fn name(i: usize) -> &'static str {
        ["x", "y", "z"][i]
    }
}

/// Axis-parallel segment between lattice points. `lo < hi` always.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeStick {
    axis: Axis,
    lo: i64,
    hi: i64,
    c1: i64,
    c2: i64,
}

impl LatticeStick {
    /// `c1`, `c2` are the fixed coordinates in axis order (x-stick: y, z;
    /// y-stick: x, z; z-stick: x, y). Returns `None` for `lo >= hi`.
    pub fn new(axis: Axis, lo: i64, hi: i64, c1: i64, c2: i64) -> Option<Self> {
        (lo < hi).then_some(LatticeStick {
            axis,
            lo,
            hi,
            c1,
            c2,
        })
    }

    /// Stick between two points differing in exactly one coordinate.
    pub fn between(p: Point3, q: Point3) -> Option<Self> {
        let diff: Vec<usize> = (0..3).filter(|&k| p[k] != q[k]).collect();
        let [k] = diff[..] else { return None };
        let axis = [Axis::X, Axis::Y, Axis::Z][k];
        let [f1, f2] = axis.fixed_indices();
        LatticeStick::new(axis, p[k].min(q[k]), p[k].max(q[k]), p[f1], p[f2])
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn fixed(&self) -> (i64, i64) {
        (self.c1, self.c2)
    }

    pub fn length(&self) -> i64 {
        self.hi - self.lo
    }

    fn point_at(&self, t: i64) -> Point3 {
        let mut p = [0; 3];
        let [f1, f2] = self.axis.fixed_indices();
        p[self.axis.index()] = t;
        p[f1] = self.c1;
        p[f2] = self.c2;
        p
    }

    pub fn lo_point(&self) -> Point3 {
        self.point_at(self.lo)
    }

    pub fn hi_point(&self) -> Point3 {
        self.point_at(self.hi)
    }

    pub fn endpoints(&self) -> [Point3; 2] {
        [self.lo_point(), self.hi_point()]
    }

    /// Per-coordinate closed ranges of the stick as a point set.
    fn bounds(&self) -> [(i64, i64); 3] {
        let mut b = [(0, 0); 3];
        let [f1, f2] = self.axis.fixed_indices();
        b[self.axis.index()] = (self.lo, self.hi);
        b[f1] = (self.c1, self.c1);
        b[f2] = (self.c2, self.c2);
        b
    }

    /// Intersection as a box of per-coordinate ranges, if non-empty.
    pub fn intersection(&self, other: &LatticeStick) -> Option<[(i64, i64); 3]> {
        let (a, b) = (self.bounds(), other.bounds());
        let mut out = [(0, 0); 3];
        for k in 0..3 {
            let lo = a[k].0.max(b[k].0);
            let hi = a[k].1.min(b[k].1);
            if lo > hi {
                return None;
            }
            out[k] = (lo, hi);
        }
        Some(out)
    }

    fn with_range(&self, lo: i64, hi: i64) -> Option<Self> {
        LatticeStick::new(self.axis, lo, hi, self.c1, self.c2)
    }
}

impl fmt::Display for LatticeStick {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [f1, f2] = self.axis.fixed_indices();
        write!(
            f,
            "{}[{},{}]@({}={},{}={})",
            Axis::name(self.axis.index()),
            self.lo,
            self.hi,
            Axis::name(f1),
            self.c1,
            Axis::name(f2),
            self.c2
        )
    }
}

#[derive(Serialize, Deserialize)]
struct StickJson {
    axis: Axis,
    range: [i64; 2],
    fixed: std::collections::BTreeMap<String, i64>,
}

impl Serialize for LatticeStick {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [f1, f2] = self.axis.fixed_indices();
        let fixed = [
            (Axis::name(f1).to_string(), self.c1),
            (Axis::name(f2).to_string(), self.c2),
        ]
        .into_iter()
        .collect();
        StickJson {
            axis: self.axis,
            range: [self.lo, self.hi],
            fixed,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeStick {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = StickJson::deserialize(d)?;
        let [f1, f2] = raw.axis.fixed_indices();
        let get = |k: usize| {
            raw.fixed.get(Axis::name(k)).copied().ok_or_else(|| {
                D::Error::custom(format!("missing fixed coordinate {}", Axis::name(k)))
            })
        };
        if raw.fixed.len() != 2 {
            return Err(D::Error::custom(
                "fixed must name exactly the two non-varying coordinates",
            ));
        }
        let (c1, c2) = (get(f1)?, get(f2)?);
        LatticeStick::new(raw.axis, raw.range[0], raw.range[1], c1, c2)
            .ok_or_else(|| D::Error::custom("stick range must satisfy lo < hi"))
    }
}

/// Sticks in cyclic traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePolygon {
    sticks: Vec<LatticeStick>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("stick endpoints do not close into a single cycle: {0}")]
    NotClosed(String),
    #[error("polygon is not self-avoiding: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    SelfIntersection(Vec<PolygonViolation>),
    #[error("arc presentation with {0} arcs is outside the construction range")]
    ArcCountOutOfRange(usize),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

impl LatticePolygon {
    /// Wraps sticks that are already in cyclic order. No checks; see
    /// [`validate_polygon`].
    pub fn from_sticks(sticks: Vec<LatticeStick>) -> Self {
        LatticePolygon { sticks }
    }

    /// Builds a closed polygon through `points` (consecutive points differ
    /// in exactly one coordinate; the last connects back to the first).
    pub fn from_points(points: &[Point3]) -> Option<Self> {
        let m = points.len();
        (0..m)
            .map(|k| LatticeStick::between(points[k], points[(k + 1) % m]))
            .collect::<Option<Vec<_>>>()
            .map(|sticks| LatticePolygon { sticks })
    }

    /// Orders an unordered set of sticks into a cycle by matching endpoints,
    /// then merges consecutive collinear sticks. The first stick is walked
    /// from its `hi` end toward its `lo` end.
    pub fn from_unordered(sticks: Vec<LatticeStick>) -> Result<Self, BuildError> {
        let m = sticks.len();
        if m == 0 {
            return Err(BuildError::NotClosed("no sticks".into()));
        }
        let mut at: HashMap<Point3, Vec<usize>> = HashMap::new();
        for (k, s) in sticks.iter().enumerate() {
            for p in s.endpoints() {
                at.entry(p).or_default().push(k);
            }
        }
        if let Some((p, ks)) = at.iter().find(|(_, ks)| ks.len() != 2) {
            return Err(BuildError::NotClosed(format!(
                "point {p:?} is an endpoint of {} sticks",
                ks.len()
            )));
        }

        let mut points = Vec::with_capacity(m);
        let mut used = vec![false; m];
        let (mut cur, mut pos) = (0usize, sticks[0].hi_point());
        for _ in 0..m {
            used[cur] = true;
            points.push(pos);
            let s = &sticks[cur];
            let next_pos = if s.hi_point() == pos {
                s.lo_point()
            } else {
                s.hi_point()
            };
            let nexts = &at[&next_pos];
            let next = if nexts[0] == cur { nexts[1] } else { nexts[0] };
            pos = next_pos;
            cur = next;
        }
        if cur != 0 || used.iter().any(|u| !u) {
            return Err(BuildError::NotClosed(
                "sticks form more than one cycle".into(),
            ));
        }
        Ok(merge_collinear(&points))
    }

    pub fn sticks(&self) -> &[LatticeStick] {
        &self.sticks
    }

    pub fn stick_count(&self) -> usize {
        self.sticks.len()
    }

    /// Traversal vertices: vertex `k` is where stick `k - 1` meets stick `k`.
    /// `None` if consecutive sticks do not share an endpoint.
    pub fn vertices(&self) -> Option<Vec<Point3>> {
        let m = self.sticks.len();
        let mut out = Vec::with_capacity(m);
        for k in 0..m {
            let prev = &self.sticks[(k + m - 1) % m];
            let cur = &self.sticks[k];
            let shared = cur
                .endpoints()
                .into_iter()
                .find(|p| prev.endpoints().contains(p))?;
            out.push(shared);
        }
        Some(out)
    }

    /// Max over axes of the coordinate spread.
    pub fn coordinate_span(&self) -> i64 {
        let mut span = 0;
        for k in 0..3 {
            let vals = self.sticks.iter().flat_map(|s| s.endpoints()).map(|p| p[k]);
            let (lo, hi) = vals.fold((i64::MAX, i64::MIN), |(l, h), v| (l.min(v), h.max(v)));
            span = span.max(hi - lo);
        }
        span
    }
}

/// Drops repeated points and merges straight-through vertices.
fn merge_collinear(points: &[Point3]) -> LatticePolygon {
    let mut pts: Vec<Point3> = points.to_vec();
    pts.dedup();
    loop {
        let m = pts.len();
        let mut removed = false;
        for k in 0..m {
            let (p, q, r) = (pts[(k + m - 1) % m], pts[k], pts[(k + 1) % m]);
            let d1: Vec<usize> = (0..3).filter(|&c| p[c] != q[c]).collect();
            let d2: Vec<usize> = (0..3).filter(|&c| q[c] != r[c]).collect();
            if d1 == d2 {
                pts.remove(k);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    let m = pts.len();
    let sticks = (0..m)
        .map(|k| LatticeStick::between(pts[k], pts[(k + 1) % m]).expect("axis-parallel step"))
        .collect();
    LatticePolygon { sticks }
}

/// One broken polygon condition, naming the offending stick indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolygonViolation {
    TooFewSticks(usize),
    /// Consecutive sticks run along the same axis.
    SameAxisAdjacent(usize, usize),
    /// Consecutive sticks do not meet at a common endpoint.
    NotJoined(usize, usize),
    /// Consecutive sticks meet somewhere other than at one shared endpoint.
    BadJoint(usize, usize),
    /// A stick meets both neighbours at the same endpoint.
    Backtrack(usize),
    /// Non-adjacent sticks share points.
    Overlap(usize, usize),
}

impl fmt::Display for PolygonViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonViolation::TooFewSticks(m) => write!(f, "{m} sticks cannot close up"),
            PolygonViolation::SameAxisAdjacent(i, j) => write!(f, "sticks {i},{j} share an axis"),
            PolygonViolation::NotJoined(i, j) => write!(f, "sticks {i},{j} are not joined"),
            PolygonViolation::BadJoint(i, j) => write!(f, "sticks {i},{j} meet improperly"),
            PolygonViolation::Backtrack(i) => write!(f, "stick {i} is entered and left at one end"),
            PolygonViolation::Overlap(i, j) => write!(f, "sticks {i},{j} intersect"),
        }
    }
}

/// Checks every polygon invariant over all stick pairs with exact integer
/// interval arithmetic and returns every violation found.
pub fn validate_polygon(poly: &LatticePolygon) -> Result<(), Vec<PolygonViolation>> {
    let sticks = &poly.sticks;
    let m = sticks.len();
    let mut violations = Vec::new();
    if m < 4 {
        violations.push(PolygonViolation::TooFewSticks(m));
        return Err(violations);
    }

    let mut joints: Vec<Option<Point3>> = vec![None; m];
    for k in 0..m {
        let next = (k + 1) % m;
        let (s, t) = (&sticks[k], &sticks[next]);
        if s.axis == t.axis {
            violations.push(PolygonViolation::SameAxisAdjacent(k, next));
            continue;
        }
        match s.intersection(t) {
            None => violations.push(PolygonViolation::NotJoined(k, next)),
            Some(b) => {
                let p = [b[0].0, b[1].0, b[2].0];
                let single = b.iter().all(|(lo, hi)| lo == hi);
                if single && s.endpoints().contains(&p) && t.endpoints().contains(&p) {
                    joints[k] = Some(p);
                } else {
                    violations.push(PolygonViolation::BadJoint(k, next));
                }
            }
        }
    }
    for k in 0..m {
        let prev = (k + m - 1) % m;
        if let (Some(a), Some(b)) = (joints[prev], joints[k]) {
            if a == b {
                violations.push(PolygonViolation::Backtrack(k));
            }
        }
    }
    for i in 0..m {
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            if sticks[i].intersection(&sticks[j]).is_some() {
                violations.push(PolygonViolation::Overlap(i, j));
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

pub fn stick_count(poly: &LatticePolygon) -> usize {
    poly.stick_count()
}

fn checked(poly: LatticePolygon) -> Result<LatticePolygon, BuildError> {
    validate_polygon(&poly).map_err(BuildError::SelfIntersection)?;
    Ok(poly)
}

fn require_range(p: &ArcPresentation) -> Result<usize, BuildError> {
    let a = p.arc_index();
    if a < 5 {
        return Err(BuildError::ArcCountOutOfRange(a));
    }
    Ok(a)
}

fn arc_sticks(i: usize, j: usize, page: usize, flipped: bool) -> [LatticeStick; 2] {
    let (i, j, k) = (i as i64, j as i64, page as i64);
    if flipped {
        // corner at (i, j): above the diagonal
        [
            LatticeStick::new(Axis::Y, i, j, i, k).expect("i < j"),
            LatticeStick::new(Axis::X, i, j, j, k).expect("i < j"),
        ]
    } else {
        [
            LatticeStick::new(Axis::X, i, j, i, k).expect("i < j"),
            LatticeStick::new(Axis::Y, i, j, j, k).expect("i < j"),
        ]
    }
}

/// Unordered sticks of the `3a` layout; the arc on page 1 is optionally
/// flipped above the diagonal.
fn basic_sticks(p: &ArcPresentation, flip_first: bool) -> Vec<LatticeStick> {
    let a = p.arc_index();
    let mut out = Vec::with_capacity(3 * a);
    for page in 1..=a {
        let (i, j) = p.arc(page);
        out.extend(arc_sticks(i, j, page, flip_first && page == 1));
    }
    for b in 1..=a {
        let (k, k2) = p.incident_pages(b);
        let b = b as i64;
        out.push(LatticeStick::new(Axis::Z, k as i64, k2 as i64, b, b).expect("distinct pages"));
    }
    out
}

/// The `3a` stick polygon: two sticks per arc at its page level plus one
/// z-stick per binding point.
pub fn construct_basic(p: &ArcPresentation) -> Result<LatticePolygon, BuildError> {
    let a = require_range(p)?;
    let poly = LatticePolygon::from_unordered(basic_sticks(p, false))?;
    if poly.stick_count() != 3 * a {
        return Err(BuildError::InternalInvariant(format!(
            "basic layout has {} sticks, expected {}",
            poly.stick_count(),
            3 * a
        )));
    }
    checked(poly)
}

fn take_matching<F>(soup: &[LatticeStick], what: &str, pred: F) -> Result<Vec<usize>, BuildError>
where
    F: Fn(&LatticeStick) -> bool,
{
    let found: Vec<usize> = (0..soup.len()).filter(|&k| pred(&soup[k])).collect();
    if found.is_empty() {
        return Err(BuildError::InternalInvariant(format!("no {what}")));
    }
    Ok(found)
}

/// Applies the y-level 1 and x-level `a` reductions to an unordered stick set.
fn reduce_soup(soup: &mut Vec<LatticeStick>, a: i64) -> Result<(), BuildError> {
    // y-level 1: two x-sticks starting at x = 1, joined by the z-stick at (1, 1)
    let xs = take_matching(soup, "x-sticks at y = 1", |s| {
        s.axis == Axis::X && s.c1 == 1
    })?;
    let z1 = take_matching(soup, "z-stick at (1, 1)", |s| {
        s.axis == Axis::Z && s.fixed() == (1, 1)
    })?;
    if xs.len() != 2 || z1.len() != 1 || xs.iter().any(|&k| soup[k].lo != 1) {
        return Err(BuildError::InternalInvariant(
            "unexpected layout at y-level 1".into(),
        ));
    }
    let (short, long) = if soup[xs[0]].hi < soup[xs[1]].hi {
        (xs[0], xs[1])
    } else {
        (xs[1], xs[0])
    };
    let near = soup[short].hi;
    if near == soup[long].hi {
        return Err(BuildError::InternalInvariant(
            "x-sticks at y = 1 have equal length".into(),
        ));
    }
    soup[long] = soup[long]
        .with_range(near, soup[long].hi)
        .expect("near < far");
    let z = soup[z1[0]];
    soup[z1[0]] = LatticeStick::new(Axis::Z, z.lo, z.hi, near, 1).expect("z range kept");
    soup.remove(short);

    // x-level a: two y-sticks ending at y = a, joined by the z-stick at (a, a)
    let ys = take_matching(soup, "y-sticks at x = a", |s| {
        s.axis == Axis::Y && s.c1 == a
    })?;
    let za = take_matching(soup, "z-stick at (a, a)", |s| {
        s.axis == Axis::Z && s.fixed() == (a, a)
    })?;
    if ys.len() != 2 || za.len() != 1 || ys.iter().any(|&k| soup[k].hi != a) {
        return Err(BuildError::InternalInvariant(
            "unexpected layout at x-level a".into(),
        ));
    }
    let (short, long) = if soup[ys[0]].lo > soup[ys[1]].lo {
        (ys[0], ys[1])
    } else {
        (ys[1], ys[0])
    };
    let near = soup[short].lo;
    if near == soup[long].lo {
        return Err(BuildError::InternalInvariant(
            "y-sticks at x = a have equal length".into(),
        ));
    }
    soup[long] = soup[long]
        .with_range(soup[long].lo, near)
        .expect("far < near");
    let z = soup[za[0]];
    soup[za[0]] = LatticeStick::new(Axis::Z, z.lo, z.hi, a, near).expect("z range kept");
    soup.remove(short);
    Ok(())
}

/// Removes one stick at each end of the binding diagonal, giving `3a - 2`
/// sticks. `poly` is expected to be the output of [`construct_basic`] for `p`.
pub fn reduce_ends(
    poly: &LatticePolygon,
    p: &ArcPresentation,
) -> Result<LatticePolygon, BuildError> {
    let a = require_range(p)?;
    let mut soup = poly.sticks.clone();
    reduce_soup(&mut soup, a as i64)?;
    let reduced = LatticePolygon::from_unordered(soup)?;
    if reduced.stick_count() != poly.stick_count() - 2 {
        return Err(BuildError::InternalInvariant(format!(
            "reduction produced {} sticks from {}",
            reduced.stick_count(),
            poly.stick_count()
        )));
    }
    checked(reduced)
}

/// `3a - 2` stick polygon with the page-1 arc flipped above the diagonal.
fn flipped_reduced_soup(nns: &NormalizedNonStar) -> Result<Vec<LatticeStick>, BuildError> {
    let p = &nns.presentation;
    let a = require_range(p)?;
    if !(1 < nns.alpha && nns.alpha < nns.beta && nns.beta < a) || p.arc(1) != (nns.alpha, nns.beta)
    {
        return Err(BuildError::InternalInvariant(
            "presentation is not normalized".into(),
        ));
    }
    let mut soup = basic_sticks(p, true);
    reduce_soup(&mut soup, a as i64)?;
    Ok(soup)
}

fn find_one(
    soup: &[LatticeStick],
    what: &str,
    pred: impl Fn(&LatticeStick) -> bool,
) -> Result<usize, BuildError> {
    let found = take_matching(soup, what, pred)?;
    if found.len() != 1 {
        return Err(BuildError::InternalInvariant(format!(
            "{} candidates for {what}",
            found.len()
        )));
    }
    Ok(found[0])
}

/// Flip-and-lift construction: the normalized arc `{alpha, beta}` on page 1
/// is flipped above the diagonal, both end reductions are applied, and the
/// arc is lifted to the level of arc `{beta, a}` so its x-stick merges into
/// that arc's x-stick. Produces `3a - 4` sticks.
pub fn construct_nonstar(nns: &NormalizedNonStar) -> Result<LatticePolygon, BuildError> {
    let a = nns.presentation.arc_index();
    let (alpha, beta, k) = (nns.alpha as i64, nns.beta as i64, nns.lift_page as i64);
    let mut soup = flipped_reduced_soup(nns)?;

    let l_y = find_one(&soup, "flipped y-stick", |s| {
        s.axis == Axis::Y && s.fixed() == (alpha, 1)
    })?;
    let l_x = find_one(&soup, "flipped x-stick", |s| {
        s.axis == Axis::X && s.fixed() == (beta, 1)
    })?;
    let target = find_one(&soup, "x-stick of arc {beta, a}", |s| {
        s.axis == Axis::X && s.fixed() == (beta, k)
    })?;
    if soup[l_x].hi != beta || soup[target].lo != beta || soup[l_x].lo != alpha {
        return Err(BuildError::InternalInvariant(
            "x-sticks to merge are not collinear-adjacent".into(),
        ));
    }
    let z_beta = find_one(&soup, "z-stick at beta", |s| {
        s.axis == Axis::Z && s.fixed() == (beta, beta)
    })?;
    let z_alpha = find_one(&soup, "z-stick at alpha", |s| {
        s.axis == Axis::Z && s.fixed() == (alpha, alpha)
    })?;
    if soup[z_beta].lo != 1 || soup[z_beta].hi != k || soup[z_alpha].lo != 1 {
        return Err(BuildError::InternalInvariant(
            "unexpected z-sticks at the lifted arc".into(),
        ));
    }

    let other = soup[z_alpha].hi;
    if other == k {
        return Err(BuildError::InternalInvariant(
            "re-ranged z-stick would be degenerate".into(),
        ));
    }
    soup[z_alpha] =
        LatticeStick::new(Axis::Z, other.min(k), other.max(k), alpha, alpha).expect("distinct");
    soup[l_y] = LatticeStick::new(Axis::Y, alpha, beta, alpha, k).expect("alpha < beta");
    soup[target] = soup[target]
        .with_range(alpha, soup[target].hi)
        .expect("alpha < a");
    let mut drop = [l_x, z_beta];
    drop.sort_unstable();
    soup.remove(drop[1]);
    soup.remove(drop[0]);

    let poly = LatticePolygon::from_unordered(soup)?;
    if poly.stick_count() != 3 * a - 4 {
        return Err(BuildError::InternalInvariant(format!(
            "lift produced {} sticks, expected {}",
            poly.stick_count(),
            3 * a - 4
        )));
    }
    checked(poly)
}

/// The flipped arc placed at every z-level `1..=lift_page` with its two
/// attaching z-sticks re-ranged; the last entry is the lifted polygon.
/// Zero-length z-sticks are dropped and straight joints merged, so each
/// element is a proper polygon of the same curve at that level.
pub fn lift_sweep(nns: &NormalizedNonStar) -> Result<Vec<LatticePolygon>, BuildError> {
    let (alpha, beta, k) = (nns.alpha as i64, nns.beta as i64, nns.lift_page as i64);
    let base = flipped_reduced_soup(nns)?;
    let l_y = find_one(&base, "flipped y-stick", |s| {
        s.axis == Axis::Y && s.fixed() == (alpha, 1)
    })?;
    let l_x = find_one(&base, "flipped x-stick", |s| {
        s.axis == Axis::X && s.fixed() == (beta, 1)
    })?;
    let z_beta = find_one(&base, "z-stick at beta", |s| {
        s.axis == Axis::Z && s.fixed() == (beta, beta)
    })?;
    let z_alpha = find_one(&base, "z-stick at alpha", |s| {
        s.axis == Axis::Z && s.fixed() == (alpha, alpha)
    })?;
    let other = base[z_alpha].hi;

    (1..=k)
        .map(|t| {
            let mut soup = Vec::with_capacity(base.len());
            for (idx, s) in base.iter().enumerate() {
                let moved = if idx == l_y {
                    LatticeStick::new(Axis::Y, alpha, beta, alpha, t)
                } else if idx == l_x {
                    LatticeStick::new(Axis::X, alpha, beta, beta, t)
                } else if idx == z_beta {
                    LatticeStick::new(Axis::Z, t, k, beta, beta)
                } else if idx == z_alpha {
                    LatticeStick::new(Axis::Z, t.min(other), t.max(other), alpha, alpha)
                } else {
                    Some(*s)
                };
                soup.extend(moved);
            }
            checked(LatticePolygon::from_unordered(soup)?)
        })
        .collect()
}
