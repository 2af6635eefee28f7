//! Arc presentations: validation, the page and binding rotations, the dual
//! presentation, and the star-shape / torus-order classification.
//!
//! An arc presentation with `a` arcs is stored as a list of index pairs: the
//! pair at position `p - 1` holds the two binding indices (in `1..=a`) of the
//! arc on page `p`. Pairs are kept smaller-index-first.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Residue of `x` modulo `y` taken in `1..=y` instead of `0..y`.
///
/// Panics if `y == 0`.
pub fn mod_star(x: i64, y: usize) -> usize {
    assert!(y >= 1, "mod_star: modulus must be positive");
    let r = x.rem_euclid(y as i64) as usize;
    if r == 0 {
        y
    } else {
        r
    }
}

/// One reason a list of pairs fails to be an arc presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcViolation {
    TooFewArcs(usize),
    IndexOutOfRange { page: usize, index: i64 },
    DegenerateArc { page: usize, index: usize },
    BindingDegree { index: usize, count: usize },
    Disconnected { components: usize },
}

impl fmt::Display for ArcViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcViolation::TooFewArcs(n) => write!(f, "need at least 2 arcs, got {n}"),
            ArcViolation::IndexOutOfRange { page, index } => {
                write!(f, "page {page}: binding index {index} out of range")
            }
            ArcViolation::DegenerateArc { page, index } => {
                write!(f, "page {page}: both ends at binding index {index}")
            }
            ArcViolation::BindingDegree { index, count } => {
                write!(f, "binding index {index} used {count} times (expected 2)")
            }
            ArcViolation::Disconnected { components } => {
                write!(f, "pairing splits into {components} cycles")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("invalid arc presentation: {}", join_violations(.0))]
    Invalid(Vec<ArcViolation>),
    #[error("arc presentation is not star shaped")]
    NotStarShaped,
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

fn join_violations(v: &[ArcViolation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A validated arc presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawArcs", into = "RawArcs")]
pub struct ArcPresentation {
    arcs: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct RawArcs {
    arcs: Vec<[i64; 2]>,
}

impl TryFrom<RawArcs> for ArcPresentation {
    type Error = ArcError;

    fn try_from(raw: RawArcs) -> Result<Self, Self::Error> {
        ArcPresentation::new(raw.arcs.into_iter().map(|[i, j]| (i, j)))
    }
}

impl From<ArcPresentation> for RawArcs {
    fn from(p: ArcPresentation) -> Self {
        RawArcs {
            arcs: p.arcs.iter().map(|&(i, j)| [i as i64, j as i64]).collect(),
        }
    }
}

impl ArcPresentation {
    /// Validates raw pairs (page order = iteration order) and reports every
    /// violated condition at once.
    pub fn new<I>(raw_pairs: I) -> Result<Self, ArcError>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let raw: Vec<(i64, i64)> = raw_pairs.into_iter().collect();
        let a = raw.len();
        let mut violations = Vec::new();
        if a < 2 {
            violations.push(ArcViolation::TooFewArcs(a));
            return Err(ArcError::Invalid(violations));
        }

        let mut arcs = Vec::with_capacity(a);
        let mut in_range = true;
        for (p, &(i, j)) in raw.iter().enumerate() {
            for idx in [i, j] {
                if idx < 1 || idx > a as i64 {
                    violations.push(ArcViolation::IndexOutOfRange {
                        page: p + 1,
                        index: idx,
                    });
                    in_range = false;
                }
            }
            if i == j && (1..=a as i64).contains(&i) {
                violations.push(ArcViolation::DegenerateArc {
                    page: p + 1,
                    index: i as usize,
                });
            }
            arcs.push((i.min(j).max(0) as usize, i.max(j).max(0) as usize));
        }
        if !in_range {
            return Err(ArcError::Invalid(violations));
        }

        let mut degree = vec![0usize; a + 1];
        for &(i, j) in &arcs {
            degree[i] += 1;
            degree[j] += 1;
        }
        let mut degrees_ok = true;
        for (index, &count) in degree.iter().enumerate().skip(1) {
            if count != 2 {
                violations.push(ArcViolation::BindingDegree { index, count });
                degrees_ok = false;
            }
        }
        if degrees_ok && violations.is_empty() {
            let components = count_components(a, &arcs);
            if components != 1 {
                violations.push(ArcViolation::Disconnected { components });
            }
        }

        if violations.is_empty() {
            Ok(ArcPresentation { arcs })
        } else {
            Err(ArcError::Invalid(violations))
        }
    }

    /// Builds from 1-based index pairs, typically literals in tests.
    pub fn from_pairs(pairs: &[[usize; 2]]) -> Result<Self, ArcError> {
        Self::new(pairs.iter().map(|&[i, j]| (i as i64, j as i64)))
    }

    /// Number of arcs (equal to the number of pages and binding indices).
    pub fn arc_index(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Endpoint pair of the arc on `page` (1-based).
    pub fn arc(&self, page: usize) -> (usize, usize) {
        self.arcs[page - 1]
    }

    /// Page of the arc with endpoints `{i, j}`, if present.
    pub fn page_of(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.arcs.iter().position(|&p| p == key).map(|p| p + 1)
    }

    /// The two pages whose arcs end at binding index `b`, ascending.
    pub fn incident_pages(&self, b: usize) -> (usize, usize) {
        let mut found = self
            .arcs
            .iter()
            .enumerate()
            .filter(|(_, &(i, j))| i == b || j == b)
            .map(|(p, _)| p + 1);
        let first = found.next().expect("binding index has two arcs");
        // a doubled pair (a = 2) meets b on both pages
        let second = found.next().expect("binding index has two arcs");
        (first, second)
    }

    /// Far end of the arc on `page` as seen from binding index `b`.
    pub fn far_end(&self, page: usize, b: usize) -> usize {
        let (i, j) = self.arc(page);
        if i == b {
            j
        } else {
            i
        }
    }

    /// Turns the pages: the arc on page `p` moves to page `mod*(p + m, a)`.
    pub fn rotate_pages(&self, m: i64) -> ArcPresentation {
        let a = self.arc_index();
        let mut arcs = vec![(0, 0); a];
        for (p, &pair) in self.arcs.iter().enumerate() {
            arcs[mod_star(p as i64 + 1 + m, a) - 1] = pair;
        }
        ArcPresentation { arcs }
    }

    /// Shifts every binding index `i` to `mod*(i + m, a)`; pages keep their arcs.
    pub fn rotate_bindings(&self, m: i64) -> ArcPresentation {
        let a = self.arc_index();
        let arcs = self
            .arcs
            .iter()
            .map(|&(i, j)| {
                let (x, y) = (mod_star(i as i64 + m, a), mod_star(j as i64 + m, a));
                (x.min(y), x.max(y))
            })
            .collect();
        ArcPresentation { arcs }
    }

    /// Exchanges the roles of binding indices and page numbers: page `m` of
    /// the dual carries the two pages incident to binding index `m` here.
    pub fn dual(&self) -> Result<ArcPresentation, ArcError> {
        let a = self.arc_index();
        let pairs: Vec<(i64, i64)> = (1..=a)
            .map(|b| {
                let (k, k2) = self.incident_pages(b);
                (k as i64, k2 as i64)
            })
            .collect();
        ArcPresentation::new(pairs)
            .map_err(|e| ArcError::InternalInvariant(format!("dual failed validation: {e}")))
    }

    /// Odd `a = 2n + 1` and every arc `{i, j}`, `i < j`, has `j - i` in `{n, n + 1}`.
    pub fn is_star_shaped(&self) -> bool {
        let a = self.arc_index();
        if a.is_multiple_of(2) {
            return false;
        }
        let n = (a - 1) / 2;
        self.arcs.iter().all(|&(i, j)| j - i == n || j - i == n + 1)
    }

    /// First binding index (ascending) whose two arcs have far ends that are
    /// not cyclically adjacent. `None` exactly when the presentation is star
    /// shaped (for `a >= 5`).
    pub fn find_nonstar_witness(&self) -> Option<NonStarWitness> {
        let a = self.arc_index();
        for beta in 1..=a {
            let (k1, k2) = self.incident_pages(beta);
            let (u, v) = (self.far_end(k1, beta), self.far_end(k2, beta));
            let d = u.abs_diff(v) % a;
            if d != 1 && d != a - 1 && u != v {
                return Some(NonStarWitness {
                    beta_raw: beta,
                    alpha_raw: u,
                    gamma_raw: v,
                    page_low: k1,
                    page_high: k2,
                });
            }
        }
        None
    }

    /// Rotates bindings so the witness indices land on `alpha < beta < a`
    /// with `alpha > 1`, then rotates pages so that arc `{alpha, beta}` is on
    /// page 1.
    pub fn normalize_for_nonstar(&self, w: &NonStarWitness) -> Result<NormalizedNonStar, ArcError> {
        let a = self.arc_index();
        let mut candidates = Vec::new();
        for (far_a, far_c) in [(w.alpha_raw, w.gamma_raw), (w.gamma_raw, w.alpha_raw)] {
            let shift = a as i64 - far_c as i64;
            let alpha = mod_star(far_a as i64 + shift, a);
            let beta = mod_star(w.beta_raw as i64 + shift, a);
            if 1 < alpha && alpha < beta && beta < a {
                candidates.push((alpha, beta, shift));
            }
        }
        candidates.sort();
        let &(alpha, beta, shift) = candidates.first().ok_or_else(|| {
            ArcError::InternalInvariant(format!(
                "{w:?} admits no labeling with 1 < alpha < beta < a"
            ))
        })?;

        let rotated = self.rotate_bindings(shift);
        let l_page = rotated.page_of(alpha, beta).ok_or_else(|| {
            ArcError::InternalInvariant(format!("arc {{{alpha}, {beta}}} missing after rotation"))
        })?;
        let presentation = rotated.rotate_pages(1 - l_page as i64);
        let lift_page = presentation.page_of(beta, a).ok_or_else(|| {
            ArcError::InternalInvariant(format!("arc {{{beta}, {a}}} missing after rotation"))
        })?;
        debug_assert_eq!(presentation.page_of(alpha, beta), Some(1));
        if lift_page < 2 {
            return Err(ArcError::InternalInvariant(
                "lift page must be at least 2".into(),
            ));
        }
        Ok(NormalizedNonStar {
            presentation,
            alpha,
            beta,
            lift_page,
        })
    }

    /// Detects whether the pages of the arcs `c_i = {i, mod*(i + n, a)}` run
    /// in cyclic order (or reverse order) of `i`.
    pub fn torus_order_check(&self) -> Result<Option<TorusClassification>, ArcError> {
        if !self.is_star_shaped() {
            return Err(ArcError::NotStarShaped);
        }
        let a = self.arc_index();
        let n = (a - 1) / 2;
        let pages: Vec<usize> = (1..=a)
            .map(|i| {
                self.page_of(i, mod_star((i + n) as i64, a))
                    .ok_or_else(|| ArcError::InternalInvariant(format!("star arc c_{i} missing")))
            })
            .collect::<Result<_, _>>()?;

        for direction in [TorusDirection::InOrder, TorusDirection::ReverseOrder] {
            for m in 0..a as i64 {
                let fits = pages.iter().enumerate().all(|(idx, &p)| {
                    let i = idx as i64 + 1;
                    let expected = match direction {
                        TorusDirection::InOrder => mod_star(i + m, a),
                        TorusDirection::ReverseOrder => mod_star(m - i, a),
                    };
                    p == expected
                });
                if fits {
                    return Ok(Some(TorusClassification {
                        n,
                        direction,
                        rotation_offset: m as usize,
                    }));
                }
            }
        }
        Ok(None)
    }
}

impl fmt::Display for ArcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (p, (i, j)) in self.arcs.iter().enumerate() {
            if p > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{i},{j}]")?;
        }
        write!(f, "]")
    }
}

fn count_components(a: usize, arcs: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..=a).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for &(i, j) in arcs {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
        }
    }
    (1..=a).filter(|&v| find(&mut parent, v) == v).count()
}

/// A binding index whose two arcs reach far ends that are not cyclically
/// adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonStarWitness {
    pub beta_raw: usize,
    pub alpha_raw: usize,
    pub gamma_raw: usize,
    pub page_low: usize,
    pub page_high: usize,
}

/// A presentation rotated into the position used by the flip-and-lift
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedNonStar {
    pub presentation: ArcPresentation,
    pub alpha: usize,
    pub beta: usize,
    /// Page of the arc `{beta, a}`.
    pub lift_page: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TorusDirection {
    InOrder,
    ReverseOrder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusClassification {
    pub n: usize,
    pub direction: TorusDirection,
    pub rotation_offset: usize,
}

impl TorusClassification {
    /// `(n + 1, n)` torus knot parameters.
    pub fn torus_params(&self) -> (usize, usize) {
        (self.n + 1, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> ArcPresentation {
        ArcPresentation::from_pairs(&[[1, 4], [2, 5], [1, 3], [2, 4], [3, 5]]).unwrap()
    }

    #[test]
    fn mod_star_values() {
        assert_eq!(mod_star(10, 5), 5);
        assert_eq!(mod_star(7, 5), 2);
        assert_eq!(mod_star(0, 3), 3);
        assert_eq!(mod_star(-1, 5), 4);
    }

    #[test]
    fn validate_examples() {
        let p = ArcPresentation::from_pairs(&[[1, 4], [2, 5], [3, 1], [4, 2], [5, 3]]).unwrap();
        assert_eq!(p.arc_index(), 5);
        assert_eq!(p, p5());

        let unknot = ArcPresentation::from_pairs(&[[1, 2], [1, 2]]).unwrap();
        assert_eq!(unknot.arc_index(), 2);

        let err = ArcPresentation::from_pairs(&[[1, 2], [3, 4], [1, 2], [3, 4]]).unwrap_err();
        assert_eq!(
            err,
            ArcError::Invalid(vec![ArcViolation::Disconnected { components: 2 }])
        );
    }

    #[test]
    fn validate_reports_every_violation() {
        let err = ArcPresentation::new([(1, 1), (2, 3), (2, 3)]).unwrap_err();
        assert_eq!(
            err,
            ArcError::Invalid(vec![ArcViolation::DegenerateArc { page: 1, index: 1 }])
        );

        let err = ArcPresentation::new([(1, 4), (2, 3), (0, 1)]).unwrap_err();
        let ArcError::Invalid(v) = err else { panic!() };
        assert!(v.contains(&ArcViolation::IndexOutOfRange { page: 1, index: 4 }));
        assert!(v.contains(&ArcViolation::IndexOutOfRange { page: 3, index: 0 }));

        let err = ArcPresentation::new([(1, 2), (1, 3), (1, 2)]).unwrap_err();
        let ArcError::Invalid(v) = err else { panic!() };
        assert!(v.contains(&ArcViolation::BindingDegree { index: 1, count: 3 }));
        assert!(v.contains(&ArcViolation::BindingDegree { index: 3, count: 1 }));

        assert!(matches!(
            ArcPresentation::new([(1, 2)]),
            Err(ArcError::Invalid(v)) if v == vec![ArcViolation::TooFewArcs(1)]
        ));
    }

    #[test]
    fn page_rotation() {
        let p = p5();
        assert_eq!(p.rotate_pages(0), p);
        assert_eq!(p.rotate_pages(5), p);
        let r = p.rotate_pages(2);
        assert_eq!(r.arc(3), p.arc(1));
        assert_eq!(r.arc(1), p.arc(4));
    }

    #[test]
    fn binding_rotation() {
        let p = p5();
        assert_eq!(p.rotate_bindings(0), p);
        let r = p.rotate_bindings(1);
        // {3,5} on page 5 becomes {4,1}
        assert_eq!(r.arc(5), (1, 4));
        assert_eq!(r.rotate_bindings(4), p);
        assert_eq!(p.rotate_bindings(-3), p.rotate_bindings(2));
    }

    #[test]
    fn dual_examples() {
        let d = p5().dual().unwrap();
        assert_eq!(
            d,
            ArcPresentation::from_pairs(&[[1, 3], [2, 4], [3, 5], [1, 4], [2, 5]]).unwrap()
        );
        assert_eq!(d.dual().unwrap(), p5());
        let unknot = ArcPresentation::from_pairs(&[[1, 2], [1, 2]]).unwrap();
        assert_eq!(unknot.dual().unwrap(), unknot);
    }

    #[test]
    fn star_shape() {
        assert!(p5().is_star_shaped());
        let six =
            ArcPresentation::from_pairs(&[[1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [1, 6]]).unwrap();
        assert!(!six.is_star_shaped());
        let broken =
            ArcPresentation::from_pairs(&[[1, 2], [2, 4], [1, 3], [3, 5], [4, 5]]).unwrap();
        assert!(!broken.is_star_shaped());
    }

    #[test]
    fn witness_search() {
        assert_eq!(p5().find_nonstar_witness(), None);
        let rewired =
            ArcPresentation::from_pairs(&[[1, 2], [2, 4], [1, 3], [3, 5], [4, 5]]).unwrap();
        let w = rewired.find_nonstar_witness().unwrap();
        assert_eq!(w.beta_raw, 2);
        assert_eq!((w.alpha_raw, w.gamma_raw), (1, 4));
        assert_eq!((w.page_low, w.page_high), (1, 2));
    }

    #[test]
    fn normalization() {
        let rewired =
            ArcPresentation::from_pairs(&[[1, 2], [2, 4], [1, 3], [3, 5], [4, 5]]).unwrap();
        let w = rewired.find_nonstar_witness().unwrap();
        let nns = rewired.normalize_for_nonstar(&w).unwrap();
        let a = 5;
        assert!(1 < nns.alpha && nns.alpha < nns.beta && nns.beta < a);
        assert_eq!(nns.presentation.arc(1), (nns.alpha, nns.beta));
        assert_eq!(nns.presentation.page_of(nns.beta, a), Some(nns.lift_page));
        // far ends 1 and 4 around beta' = 2: anchoring 1 at a gives alpha = 3, beta = 1 (rejected);
        // anchoring 4 at a gives alpha = 2, beta = 3
        assert_eq!((nns.alpha, nns.beta), (2, 3));
    }

    #[test]
    fn normalization_rejects_non_witness() {
        let p = p5();
        let bogus = NonStarWitness {
            beta_raw: 1,
            alpha_raw: 3,
            gamma_raw: 4,
            page_low: 1,
            page_high: 3,
        };
        assert!(matches!(
            p.normalize_for_nonstar(&bogus),
            Err(ArcError::InternalInvariant(_))
        ));
    }

    #[test]
    fn torus_order() {
        let t = p5().torus_order_check().unwrap().unwrap();
        assert_eq!(t.n, 2);
        assert_eq!(t.direction, TorusDirection::InOrder);
        assert_eq!(t.rotation_offset, 2);
        assert_eq!(t.torus_params(), (3, 2));

        let p7: Vec<[usize; 2]> = (1..=7).map(|i| [i, mod_star(i as i64 + 3, 7)]).collect();
        let p7 = ArcPresentation::from_pairs(&p7).unwrap();
        let t = p7.torus_order_check().unwrap().unwrap();
        assert_eq!(
            (t.n, t.direction, t.rotation_offset),
            (3, TorusDirection::InOrder, 0)
        );

        // pages of c_1..c_5 = (1,3,2,4,5)
        let mut arcs = vec![[0, 0]; 5];
        for (i, page) in [(1usize, 1usize), (2, 3), (3, 2), (4, 4), (5, 5)] {
            arcs[page - 1] = [i, mod_star(i as i64 + 2, 5)];
        }
        let p = ArcPresentation::from_pairs(&arcs).unwrap();
        assert!(p.is_star_shaped());
        assert_eq!(p.torus_order_check().unwrap(), None);

        let mut rev = vec![[0, 0]; 5];
        for i in 1..=5usize {
            rev[mod_star(4 - i as i64, 5) - 1] = [i, mod_star(i as i64 + 2, 5)];
        }
        let rev = ArcPresentation::from_pairs(&rev).unwrap();
        let t = rev.torus_order_check().unwrap().unwrap();
        assert_eq!(
            (t.direction, t.rotation_offset),
            (TorusDirection::ReverseOrder, 4)
        );

        let six =
            ArcPresentation::from_pairs(&[[1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [1, 6]]).unwrap();
        assert_eq!(six.torus_order_check(), Err(ArcError::NotStarShaped));
    }

    #[test]
    fn json_schema() {
        let p = p5();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"arcs":[[1,4],[2,5],[1,3],[2,4],[3,5]]}"#);
        let back: ArcPresentation =
            serde_json::from_str(r#"{"arcs":[[4,1],[2,5],[3,1],[4,2],[5,3]]}"#).unwrap();
        assert_eq!(back, p);
        assert!(
            serde_json::from_str::<ArcPresentation>(r#"{"arcs":[[1,2],[3,4],[1,2],[3,4]]}"#)
                .is_err()
        );
    }
}
