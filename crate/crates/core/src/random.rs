//! Seeded generators of random arc presentations, for property tests and the
//! acceptance suite.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arc::{mod_star, ArcPresentation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random Hamiltonian cycle on the binding indices with a uniform
/// random page assignment.
pub fn random_presentation<R: Rng + ?Sized>(rng: &mut R, a: usize) -> ArcPresentation {
    assert!(a >= 2);
    let mut order: Vec<usize> = (1..=a).collect();
    order.shuffle(rng);
    let mut arcs: Vec<(i64, i64)> = (0..a)
        .map(|t| (order[t] as i64, order[(t + 1) % a] as i64))
        .collect();
    arcs.shuffle(rng);
    ArcPresentation::new(arcs).expect("a Hamiltonian cycle is a valid presentation")
}

/// Star-shaped presentation (odd `a >= 3`) with uniformly random pages.
pub fn random_star_presentation<R: Rng + ?Sized>(rng: &mut R, a: usize) -> ArcPresentation {
    assert!(a % 2 == 1 && a >= 3);
    let mut pages: Vec<usize> = (1..=a).collect();
    pages.shuffle(rng);
    star_with_pages(&pages)
}

/// Star-shaped presentation where chord `c_i = {i, i + n}` sits on `pages[i - 1]`.
pub fn star_with_pages(pages: &[usize]) -> ArcPresentation {
    let a = pages.len();
    let n = (a - 1) / 2;
    let mut arcs = vec![(0i64, 0i64); a];
    for (idx, &page) in pages.iter().enumerate() {
        let i = idx + 1;
        arcs[page - 1] = (i as i64, mod_star((i + n) as i64, a) as i64);
    }
    ArcPresentation::new(arcs).expect("star chords form a single cycle")
}

/// Star-shaped presentation in torus order: chord `c_i` on page
/// `i + m` or `m - i` for a random offset and direction.
pub fn random_torus_star<R: Rng + ?Sized>(rng: &mut R, a: usize) -> ArcPresentation {
    assert!(a % 2 == 1 && a >= 3);
    let m = rng.gen_range(0..a) as i64;
    let reverse = rng.gen_bool(0.5);
    let pages: Vec<usize> = (1..=a as i64)
        .map(|i| mod_star(if reverse { m - i } else { i + m }, a))
        .collect();
    star_with_pages(&pages)
}

/// The seeded suite used by the acceptance tests: mostly general
/// presentations with `5 <= a <= 9`, plus star-shaped ones at odd `a` (some
/// in torus order) so the torus and dual branches are exercised.
pub fn acceptance_suite(seed: u64, count: usize) -> Vec<ArcPresentation> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            if k % 10 == 9 {
                let a = [5, 7, 9][r.gen_range(0..3)];
                random_torus_star(&mut r, a)
            } else if k % 5 == 4 {
                let a = [5, 7, 9][r.gen_range(0..3)];
                random_star_presentation(&mut r, a)
            } else {
                let a = r.gen_range(5..=9);
                random_presentation(&mut r, a)
            }
        })
        .collect()
}
