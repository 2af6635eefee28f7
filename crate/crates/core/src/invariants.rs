//! Knot invariants of planar diagrams: the Alexander polynomial (from the
//! Wirtinger presentation), the determinant, and the writhe-normalized
//! Kauffman bracket.
//!
//! The Alexander minor is a polynomial determinant. It is computed exactly by
//! evaluating at enough points modulo several 62-bit primes, interpolating,
//! and recombining with the Chinese remainder theorem; the number of primes
//! is chosen from an a-priori coefficient bound, so the result is exact.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::diagram::PlanarDiagram;
use crate::laurent::LaurentPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("diagram has {crossings} crossings, above the cap of {cap}")]
    CrossingCapExceeded { crossings: usize, cap: usize },
}

pub const DEFAULT_JONES_CAP: usize = 20;

/// Alexander matrix: one row per crossing, one column per Wirtinger arc.
/// Entries are `c0 + c1 t`, stored as `[c0, c1]`.
pub fn alexander_matrix(d: &PlanarDiagram) -> Vec<Vec<[i64; 2]>> {
    let n = d.crossing_count();
    if n == 0 {
        return Vec::new();
    }
    let gauss = d.gauss_sequence();
    let edges = gauss.len();
    // arc of each edge: a new arc starts after every under-passage
    let mut arc_of = vec![0usize; edges];
    let mut cur = 0usize;
    for e in 0..edges {
        arc_of[e] = cur;
        let next_passage = gauss[(e + 1) % edges];
        if !next_passage.over {
            cur += 1;
        }
    }
    // the walk started mid-arc unless passage 0 is an under-passage
    if gauss[0].over {
        let last = cur;
        for a in arc_of.iter_mut() {
            if *a == last {
                *a = 0;
            }
        }
    }

    let mut m = vec![vec![[0i64; 2]; n]; n];
    for (row, c) in d.crossings().iter().enumerate() {
        let over = arc_of[c.over_in];
        let (ui, uo) = (arc_of[c.under_in], arc_of[c.under_out]);
        m[row][over][0] += 1;
        m[row][over][1] -= 1;
        if c.sign > 0 {
            m[row][ui][1] += 1;
            m[row][uo][0] -= 1;
        } else {
            m[row][ui][0] -= 1;
            m[row][uo][1] += 1;
        }
    }
    m
}

/// Canonical Alexander polynomial. A crossingless diagram gives 1.
pub fn alexander(d: &PlanarDiagram) -> LaurentPolynomial {
    let m = alexander_matrix(d);
    if m.len() <= 1 {
        return LaurentPolynomial::one();
    }
    let k = m.len() - 1;
    let minor: Vec<Vec<[i64; 2]>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
    let coeffs = linear_poly_det(&minor);
    LaurentPolynomial::from_coefficients(&coeffs, 0)
        .canonicalize()
        .expect("Alexander polynomial of a knot diagram is nonzero")
}

/// `|Δ(-1)|` of the canonical Alexander polynomial.
pub fn determinant(d: &PlanarDiagram) -> u64 {
    let delta = alexander(d);
    delta.eval(-1).expect("integral at -1").unsigned_abs() as u64
}

/// Kauffman bracket state sum normalized by the writhe,
/// `(-A^3)^(-w) <D>`, as a Laurent polynomial in `A`. A knot invariant that
/// distinguishes mirror images (`A -> A^-1`).
pub fn jones_kauffman(d: &PlanarDiagram, cap: usize) -> Result<LaurentPolynomial, InvariantError> {
    let n = d.crossing_count();
    if n > cap {
        return Err(InvariantError::CrossingCapExceeded { crossings: n, cap });
    }
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let tuples: Vec<[usize; 4]> = (0..n).map(|c| d.pd_tuple(c).map(|e| e - 1)).collect();
    let edges = 2 * n;

    // (A-count minus B-count, loop count) -> number of states
    let mut tally: HashMap<(i32, u32), i64> = HashMap::new();
    let mut parent = vec![0usize; edges];
    for state in 0u64..(1u64 << n) {
        for (e, p) in parent.iter_mut().enumerate() {
            *p = e;
        }
        let mut loops = edges as u32;
        for (c, &[a, b, cc, dd]) in tuples.iter().enumerate() {
            let pairs = if state >> c & 1 == 0 {
                [(a, b), (cc, dd)]
            } else {
                [(a, dd), (b, cc)]
            };
            for (x, y) in pairs {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                    loops -= 1;
                }
            }
        }
        let b_count = state.count_ones() as i32;
        *tally.entry((n as i32 - 2 * b_count, loops)).or_insert(0) += 1;
    }

    let delta = LaurentPolynomial::from_terms([(-1, 2), (-1, -2)]);
    let mut bracket = LaurentPolynomial::zero();
    let mut keys: Vec<_> = tally.into_iter().collect();
    keys.sort();
    for ((sigma, loops), count) in keys {
        let term = &LaurentPolynomial::monomial(count, sigma) * &delta.pow(loops - 1);
        bracket = &bracket + &term;
    }
    let w = d.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(&LaurentPolynomial::monomial(sign, -3 * w as i32) * &bracket)
}

/// Converts the normalized bracket in `A` to the Jones polynomial in `t`
/// (`A = t^(-1/4)`). `None` if some exponent is not a multiple of 4.
pub fn bracket_to_jones(f: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    let mut out = LaurentPolynomial::zero();
    for (e, c) in f.terms() {
        if e % 4 != 0 {
            return None;
        }
        out.add_term(c, -e / 4);
    }
    Some(out)
}

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

// ---------------------------------------------------------------------------
// exact determinant of a matrix with entries c0 + c1 t

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = pow_mod(b, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_BITS: u32 = 62;

/// Descending primes below `2^62`, generated on demand.
fn primes(count: usize) -> Vec<u64> {
    static CACHE: OnceLock<std::sync::Mutex<Vec<u64>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| std::sync::Mutex::new(Vec::new()));
    let mut list = cache.lock().expect("prime cache poisoned");
    let mut candidate = list.last().copied().unwrap_or(1u64 << PRIME_BITS);
    while list.len() < count {
        candidate -= 1;
        if is_prime_u64(candidate) {
            list.push(candidate);
        }
    }
    list[..count].to_vec()
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[col][col], p);
        let inv = pow_mod(m[col][col], p - 2, p);
        for r in col + 1..n {
            if m[r][col] == 0 {
                continue;
            }
            let f = mul_mod(m[r][col], inv, p);
            let (top, bottom) = m.split_at_mut(r);
            for (x, &y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
    }
    det
}

/// Coefficients (ascending) of the degree `< points` polynomial through
/// `(x, ys[x])` for `x = 0..points`, modulo `p`.
fn interpolate_mod(ys: &[u64], p: u64) -> Vec<u64> {
    let n = ys.len();
    // Newton divided differences at nodes 0..n
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            let den = level as u64 % p;
            dd[i] = mul_mod(num, pow_mod(den, p - 2, p), p);
        }
    }
    // expand the Newton form from the innermost term outward
    let mut coeffs = vec![0u64; n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - i) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if coeffs[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = (next[k + 1] + coeffs[k]) % p;
            }
            let sub = mul_mod(coeffs[k], i as u64 % p, p);
            next[k] = (next[k] + p - sub) % p;
        }
        next[0] = (next[0] + dd[i]) % p;
        coeffs = next;
    }
    coeffs
}

fn linear_poly_det(m: &[Vec<[i64; 2]>]) -> Vec<i64> {
    let n = m.len();
    if n == 0 {
        return vec![1];
    }
    let points = n + 1;
    // coefficient 1-norm of the determinant is at most the product of row 1-norms
    let bound: BigInt = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| e[0].unsigned_abs() + e[1].unsigned_abs())
                .sum::<u64>()
        })
        .fold(BigInt::one(), |acc, r| acc * BigInt::from(r.max(1)));
    let needed = &bound * 2 + 1;

    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); points];
    let mut count = 1;
    loop {
        let ps = primes(count);
        let p = ps[count - 1];
        let ys: Vec<u64> = (0..points as u64)
            .map(|x| {
                let mm: Vec<Vec<u64>> = m
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| {
                                let c0 = e[0].rem_euclid(p as i64) as u64;
                                let c1 = e[1].rem_euclid(p as i64) as u64;
                                (c0 + mul_mod(c1, x, p)) % p
                            })
                            .collect()
                    })
                    .collect();
                det_mod(mm, p)
            })
            .collect();
        let coeffs = interpolate_mod(&ys, p);
        // combine with previous residues
        let pb = BigInt::from(p);
        for (res, &c) in residues.iter_mut().zip(&coeffs) {
            // res + modulus * k ≡ c (mod p)
            let diff = (BigInt::from(c) - &*res).mod_floor(&pb);
            let inv = modulus.modpow(&(&pb - 2), &pb);
            let k = (diff * inv).mod_floor(&pb);
            *res += &modulus * k;
        }
        modulus *= &pb;
        if modulus > needed {
            break;
        }
        count += 1;
    }
    let half = &modulus / 2;
    let mut out: Vec<i64> = residues
        .into_iter()
        .map(|r| {
            let v = if r > half { r - &modulus } else { r };
            debug_assert!(v.abs() <= bound);
            v.to_i64().expect("Alexander coefficient exceeds i64")
        })
        .collect();
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::ArcPresentation;
    use crate::diagram::arc_to_planar;

    fn lp(c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_coefficients(c, 0)
    }

    #[test]
    fn primes_are_prime() {
        let ps = primes(4);
        assert!(ps.iter().all(|&p| is_prime_u64(p) && p < 1 << 62));
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(!is_prime_u64(561));
        assert!(is_prime_u64(2305843009213693951));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = primes(1)[0];
        // 3 - 2x + x^3
        let ys: Vec<u64> = (0..5u64)
            .map(|x| {
                let v = 3i128 - 2 * x as i128 + (x as i128).pow(3);
                v.rem_euclid(p as i128) as u64
            })
            .collect();
        let c = interpolate_mod(&ys, p);
        assert_eq!(&c[..4], &[3, p - 2, 0, 1]);
        assert_eq!(c[4], 0);
    }

    #[test]
    fn linear_det_small() {
        // det [[1-t, t], [-1, 1]] = 1 - t + t = 1
        let m = vec![vec![[1, -1], [0, 1]], vec![[-1, 0], [1, 0]]];
        assert_eq!(linear_poly_det(&m), vec![1]);
        // det [[t, 0], [0, t]] = t^2
        let m = vec![vec![[0, 1], [0, 0]], vec![[0, 0], [0, 1]]];
        assert_eq!(linear_poly_det(&m), vec![0, 0, 1]);
        let big = vec![vec![[-7, 3]]];
        assert_eq!(linear_poly_det(&big), vec![-7, 3]);
    }

    #[test]
    fn unknot_values() {
        let d = PlanarDiagram::unknot();
        assert_eq!(alexander(&d), LaurentPolynomial::one());
        assert_eq!(determinant(&d), 1);
        assert_eq!(jones_kauffman(&d, 20).unwrap(), LaurentPolynomial::one());
    }

    #[test]
    fn trefoil_values() {
        let d = PlanarDiagram::from_pd("X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]").unwrap();
        assert_eq!(alexander(&d), lp(&[1, -1, 1]));
        assert_eq!(determinant(&d), 3);
        let f = jones_kauffman(&d, 20).unwrap();
        // left-handed trefoil: V = -t^-4 + t^-3 + t^-1
        let v = bracket_to_jones(&f).unwrap();
        assert_eq!(
            v,
            LaurentPolynomial::from_terms([(-1, -4), (1, -3), (1, -1)])
        );
        let mirror = jones_kauffman(&d.mirror(), 20).unwrap();
        assert_ne!(mirror, f);
        assert_eq!(mirror, f.substitute_power(-1));
    }

    #[test]
    fn figure_eight_from_pd() {
        let d = PlanarDiagram::from_pd("X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]").unwrap();
        assert_eq!(alexander(&d), lp(&[1, -3, 1]));
        assert_eq!(determinant(&d), 5);
        let v = bracket_to_jones(&jones_kauffman(&d, 20).unwrap()).unwrap();
        assert_eq!(
            v,
            LaurentPolynomial::from_terms([(1, -2), (-1, -1), (1, 0), (-1, 1), (1, 2)])
        );
    }

    #[test]
    fn trefoil_grid() {
        let p = ArcPresentation::from_pairs(&[[1, 4], [2, 5], [1, 3], [2, 4], [3, 5]]).unwrap();
        let d = arc_to_planar(&p);
        assert_eq!(alexander(&d), lp(&[1, -1, 1]));
        assert_eq!(alexander(&d.mirror()), alexander(&d));
    }

    #[test]
    fn cap_is_enforced() {
        let p = ArcPresentation::from_pairs(&[[1, 4], [2, 5], [1, 3], [2, 4], [3, 5]]).unwrap();
        let d = arc_to_planar(&p);
        assert_eq!(
            jones_kauffman(&d, 2),
            Err(InvariantError::CrossingCapExceeded {
                crossings: 3,
                cap: 2
            })
        );
    }
}
