//! Test-side oracles, written without using the library's diagram or
//! invariant code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use stickknot::ArcPresentation;

/// Alexander polynomial straight from the grid: with `w(p)` the winding
/// number of the grid curve around the cell corner `p`, the determinant of
/// the `a x a` matrix `t^(-w(p))` equals `±t^k (1 - t)^(a-1) Δ(t)`.
///
/// Returned as coefficients, lowest degree first, normalized to a positive
/// constant term.
pub fn grid_alexander(p: &ArcPresentation) -> Vec<i64> {
    let a = p.arc_index();
    let wind = winding_numbers(p);
    // corners (u + 1/2, v + 1/2) for u, v in 0..a
    let mut det: BTreeMap<i64, i128> = BTreeMap::new();
    let mut perm: Vec<usize> = (0..a).collect();
    let mut sign = 1i128;
    loop {
        let e: i64 = (0..a).map(|r| -wind[r][perm[r]]).sum();
        *det.entry(e).or_insert(0) += sign;
        match next_permutation(&mut perm) {
            Some(parity_flip) => {
                if parity_flip {
                    sign = -sign;
                }
            }
            None => break,
        }
    }
    let mut poly = dense(&det);
    for _ in 0..a - 1 {
        poly = divide_by_one_minus_t(&poly);
    }
    normalize(poly)
}

/// `wind[v][u]`: winding number around `(u + 1/2, v + 1/2)`, where the curve
/// runs horizontally along row `y = page` and vertically along column
/// `x = binding index`.
fn winding_numbers(p: &ArcPresentation) -> Vec<Vec<i64>> {
    let a = p.arc_index();
    // traverse: list the (binding, page) corners of the cycle
    let mut corners = Vec::with_capacity(2 * a);
    let (mut page, mut b) = (1usize, p.arcs()[0].0);
    for _ in 0..a {
        let (i, j) = p.arcs()[page - 1];
        let other = if i == b { j } else { i };
        corners.push((b as i64, page as i64));
        corners.push((other as i64, page as i64));
        let pages: Vec<usize> = (1..=a)
            .filter(|&q| q != page && (p.arcs()[q - 1].0 == other || p.arcs()[q - 1].1 == other))
            .collect();
        page = pages[0];
        b = other;
    }
    let m = corners.len();
    let mut wind = vec![vec![0i64; a]; a];
    for (v, row) in wind.iter_mut().enumerate() {
        for (u, w) in row.iter_mut().enumerate() {
            // doubled coordinates avoid halves
            let (x0, y0) = (2 * u as i64 + 1, 2 * v as i64 + 1);
            let mut total = 0;
            for k in 0..m {
                let (x1, y1) = corners[k];
                let (x2, y2) = corners[(k + 1) % m];
                if x1 != x2 {
                    continue;
                }
                let (x, ya, yb) = (2 * x1, 2 * y1, 2 * y2);
                if x > x0 && ya.min(yb) < y0 && y0 < ya.max(yb) {
                    total += if yb > ya { 1 } else { -1 };
                }
            }
            *w = total;
        }
    }
    wind
}

/// Advances to the next permutation in lexicographic order. Returns whether
/// the parity changed, or `None` after the last permutation.
fn next_permutation(perm: &mut [usize]) -> Option<bool> {
    let n = perm.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    let reversed = n - i;
    // one swap plus floor(len/2) swaps for the reversal
    Some((1 + reversed / 2) % 2 == 1)
}

fn dense(m: &BTreeMap<i64, i128>) -> Vec<i128> {
    let nz: Vec<(i64, i128)> = m
        .iter()
        .filter(|(_, &c)| c != 0)
        .map(|(&e, &c)| (e, c))
        .collect();
    let lo = nz.first().expect("nonzero determinant").0;
    let hi = nz.last().unwrap().0;
    let mut out = vec![0i128; (hi - lo + 1) as usize];
    for (e, c) in nz {
        out[(e - lo) as usize] = c;
    }
    out
}

/// Exact division of `f` (lowest degree first) by `1 - t`.
fn divide_by_one_minus_t(f: &[i128]) -> Vec<i128> {
    // f = (1 - t) q  =>  q_k = f_k + q_{k-1}
    let mut q = Vec::with_capacity(f.len() - 1);
    let mut acc = 0i128;
    for &c in &f[..f.len() - 1] {
        acc += c;
        q.push(acc);
    }
    assert_eq!(acc + f[f.len() - 1], 0, "not divisible by 1 - t");
    q
}

/// Strips zero ends and fixes the sign so the constant term is positive.
pub fn normalize(mut f: Vec<i128>) -> Vec<i64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    let start = f.iter().position(|&c| c != 0).expect("nonzero");
    let f = &f[start..];
    let s = if f[0] < 0 { -1 } else { 1 };
    f.iter().map(|&c| (s * c) as i64).collect()
}

/// Same normalization for library output.
pub fn normalize_i64(f: &[i64]) -> Vec<i64> {
    normalize(f.iter().map(|&c| c as i128).collect())
}

/// `(t^(pq) - 1)(t - 1) / ((t^p - 1)(t^q - 1))`.
pub fn torus_alexander(p: usize, q: usize) -> Vec<i64> {
    let mut num = vec![0i128; p * q + 2];
    // (t^(pq) - 1)(t - 1) = t^(pq+1) - t^(pq) - t + 1
    num[p * q + 1] += 1;
    num[p * q] -= 1;
    num[1] -= 1;
    num[0] += 1;
    let num = divide_by_binomial(&num, p);
    let num = divide_by_binomial(&num, q);
    normalize(num)
}

/// Exact division by `t^k - 1`.
fn divide_by_binomial(f: &[i128], k: usize) -> Vec<i128> {
    let mut r = f.to_vec();
    let deg = r.len() - 1;
    let mut q = vec![0i128; deg + 1 - k];
    for d in (k..=deg).rev() {
        let c = r[d];
        q[d - k] = c;
        r[d] -= c;
        r[d - k] += c;
    }
    assert!(r.iter().all(|&c| c == 0), "not divisible by t^{k} - 1");
    q
}
