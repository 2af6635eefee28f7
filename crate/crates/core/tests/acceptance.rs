//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::process::ExitCode;

use stickknot::arc::mod_star;
use stickknot::certify::{check_bounds, construct_auto, Branch, CertifyOptions, MatchStatus};
use stickknot::lattice::lift_sweep;
use stickknot::random::{acceptance_suite, star_with_pages};
use stickknot::{
    alexander, arc_to_planar, dataset, determinant, project_polygon, validate_polygon,
    ArcPresentation, LatticePolygon,
};

const SEED: u64 = 0x5eed;
const SUITE: usize = 200;

type Outcome = Result<String, String>;

fn p5() -> ArcPresentation {
    ArcPresentation::from_pairs(&[[1, 4], [2, 5], [1, 3], [2, 4], [3, 5]]).unwrap()
}

fn p7() -> ArcPresentation {
    let arcs: Vec<[usize; 2]> = (1..=7).map(|i| [i, mod_star(i as i64 + 3, 7)]).collect();
    ArcPresentation::from_pairs(&arcs).unwrap()
}

fn entry(name: &str) -> ArcPresentation {
    dataset::get(name)
        .unwrap_or_else(|| panic!("dataset entry {name}"))
        .arcs
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn figure_eight() -> Outcome {
    let p = entry("4_1");
    let (poly, cert) = construct_auto(&p, CertifyOptions::default()).map_err(|e| e.to_string())?;
    let cert = check_bounds(&cert, 4, Default::default());
    let b = cert.check("3c+2").ok_or("missing 3c+2 check")?;
    ensure(cert.branch == Branch::Nonstar, || {
        format!("branch {:?}", cert.branch)
    })?;
    ensure(poly.stick_count() == 14 && cert.stick_count == 14, || {
        format!("{} sticks", poly.stick_count())
    })?;
    ensure((b.lhs, b.rhs, b.holds) == (14, 14, true), || {
        format!("{b:?}")
    })?;
    ensure(cert.invariant_match.status == MatchStatus::Matched, || {
        "alexander mismatch".into()
    })?;
    Ok("a=6 nonstar, 14 sticks, 14 <= 3*4+2 = 14".into())
}

fn torus_branch() -> Outcome {
    let (poly, cert) =
        construct_auto(&p7(), CertifyOptions::default()).map_err(|e| e.to_string())?;
    let cert = check_bounds(&cert, 8, Default::default());
    ensure(cert.branch == Branch::TorusStar, || {
        format!("branch {:?}", cert.branch)
    })?;
    ensure(cert.torus_params == Some((4, 3)), || {
        format!("{:?}", cert.torus_params)
    })?;
    ensure(poly.stick_count() == 19, || {
        format!("{} sticks", poly.stick_count())
    })?;
    let b = cert.check("3c-5").ok_or("missing 3c-5 check")?;
    ensure((b.lhs, b.rhs, b.holds) == (19, 19, true), || {
        format!("{b:?}")
    })?;
    let c = cert.check("c=n^2-1").ok_or("missing c=n^2-1 check")?;
    ensure((c.lhs, c.rhs, c.holds) == (8, 8, true), || format!("{c:?}"))?;
    let expected = common::torus_alexander(4, 3);
    let got = common::normalize_i64(
        cert.invariant_match
            .output_alexander
            .as_deref()
            .unwrap_or_default(),
    );
    ensure(got == expected, || format!("alexander {got:?}"))?;
    Ok("(4,3)-torus, 19 sticks, 19 <= 3*8-5 = 19, c = 3^2-1".into())
}

fn trefoil_exception() -> Outcome {
    let (poly, cert) =
        construct_auto(&p5(), CertifyOptions::default()).map_err(|e| e.to_string())?;
    let cert = check_bounds(&cert, 3, Default::default());
    ensure(cert.branch == Branch::TorusStar, || {
        format!("branch {:?}", cert.branch)
    })?;
    ensure(poly.stick_count() == 13, || {
        format!("{} sticks", poly.stick_count())
    })?;
    let b = cert.check("3c+2").ok_or("missing 3c+2 check")?;
    ensure(
        (b.lhs, b.rhs, b.holds, b.expected_failure) == (13, 11, false, true),
        || format!("{b:?}"),
    )?;
    Ok("13 sticks, 13 <= 11 fails as expected".into())
}

struct Built {
    p: ArcPresentation,
    poly: LatticePolygon,
    branch: Branch,
}

fn build_suite(suite: &[ArcPresentation]) -> Result<Vec<Built>, String> {
    suite
        .iter()
        .map(|p| {
            construct_auto(
                p,
                CertifyOptions {
                    check_invariant: false,
                },
            )
            .map(|(poly, cert)| Built {
                p: p.clone(),
                poly,
                branch: cert.branch,
            })
            .map_err(|e| format!("{p}: {e}"))
        })
        .collect()
}

fn stick_count_law(built: &[Built]) -> Outcome {
    let mut per_branch = [0usize; 3];
    for b in built {
        let a = b.p.arc_index();
        let expected = match b.branch {
            Branch::Nonstar | Branch::DualNonstar => 3 * a - 4,
            Branch::TorusStar => 3 * a - 2,
        };
        ensure(b.poly.stick_count() == expected, || {
            format!(
                "{}: {:?} gave {} sticks",
                b.p,
                b.branch,
                b.poly.stick_count()
            )
        })?;
        validate_polygon(&b.poly).map_err(|v| format!("{}: {v:?}", b.p))?;
        per_branch[b.branch as usize] += 1;
    }
    Ok(format!(
        "{} presentations (nonstar {}, dual-nonstar {}, torus-star {})",
        built.len(),
        per_branch[0],
        per_branch[1],
        per_branch[2]
    ))
}

fn knot_type_oracle(built: &[Built]) -> Outcome {
    let mut checked = 0;
    for e in dataset::entries() {
        let (poly, _) = construct_auto(
            &e.arcs,
            CertifyOptions {
                check_invariant: false,
            },
        )
        .map_err(|x| x.to_string())?;
        let input = alexander(&arc_to_planar(&e.arcs));
        let output = alexander(&project_polygon(&poly).map_err(|x| x.to_string())?);
        ensure(input == output, || {
            format!("{}: {input} vs {output}", e.name)
        })?;
        let oracle = common::grid_alexander(&e.arcs);
        ensure(
            common::normalize_i64(&output.coefficients()) == oracle,
            || format!("{}: oracle {oracle:?}", e.name),
        )?;
        checked += 1;
    }
    for b in built {
        let input = alexander(&arc_to_planar(&b.p));
        let output = alexander(&project_polygon(&b.poly).map_err(|x| x.to_string())?);
        ensure(input == output, || format!("{}: {input} vs {output}", b.p))?;
        let oracle = common::grid_alexander(&b.p);
        ensure(
            common::normalize_i64(&output.coefficients()) == oracle,
            || format!("{}: oracle {oracle:?}", b.p),
        )?;
        checked += 1;
    }
    Ok(format!(
        "{checked} constructions, input, output and grid oracle Alexander equal"
    ))
}

fn star_dual_violation(p: &ArcPresentation) -> Result<bool, String> {
    if !p.is_star_shaped() || p.torus_order_check().map_err(|e| e.to_string())?.is_some() {
        return Ok(false);
    }
    Ok(p.dual().map_err(|e| e.to_string())?.is_star_shaped())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n);
            out.push(v);
        }
    }
    out
}

fn star_duals(suite: &[ArcPresentation]) -> Outcome {
    let mut scanned = 0;
    let mut non_torus = 0;
    for p in suite {
        ensure(!star_dual_violation(p)?, || {
            format!("{p}: dual is star shaped")
        })?;
    }
    for a in [5usize, 7] {
        for pages in permutations(a) {
            let p = star_with_pages(&pages);
            scanned += 1;
            if p.torus_order_check().map_err(|e| e.to_string())?.is_none() {
                non_torus += 1;
            }
            ensure(!star_dual_violation(&p)?, || {
                format!("{p}: dual is star shaped")
            })?;
        }
    }
    Ok(format!(
        "random suite plus {scanned} exhaustive star presentations ({non_torus} outside torus order), no star duals"
    ))
}

fn canonical(p: &ArcPresentation) -> String {
    serde_json::to_value(p).unwrap().to_string()
}

fn algebraic(suite: &[ArcPresentation]) -> Outcome {
    for p in suite {
        let dd = p.dual().and_then(|d| d.dual()).map_err(|e| e.to_string())?;
        ensure(canonical(&dd) == canonical(p), || {
            format!("{p}: dual of dual differs")
        })?;
        let d = arc_to_planar(p);
        let delta = alexander(&d);
        ensure(delta.is_palindromic(), || {
            format!("{p}: {delta} not palindromic")
        })?;
        let det = determinant(&d);
        ensure(det % 2 == 1, || format!("{p}: determinant {det}"))?;
        ensure(det as i128 == delta.eval(-1).unwrap().abs(), || {
            format!("{p}: determinant {det} vs {delta}")
        })?;
        for m in [1, 2, -1] {
            for q in [p.rotate_pages(m), p.rotate_bindings(m)] {
                ensure(alexander(&arc_to_planar(&q)) == delta, || {
                    format!("{p}: rotation by {m} changed Alexander")
                })?;
            }
        }
    }
    Ok(format!(
        "{} presentations: involution, rotations, palindromes, odd determinants",
        suite.len()
    ))
}

fn non_alternating() -> Outcome {
    for name in ["8_20", "8_21"] {
        let e = dataset::get(name).ok_or_else(|| format!("missing {name}"))?;
        ensure(
            e.arcs.arc_index() == 8 && e.crossing_number == 8 && e.flags.non_alternating_prime,
            || format!("{name}: dataset record"),
        )?;
        let (poly, cert) =
            construct_auto(&e.arcs, CertifyOptions::default()).map_err(|x| x.to_string())?;
        let cert = check_bounds(&cert, 8, e.flags);
        ensure(poly.stick_count() == 20, || {
            format!("{name}: {} sticks", poly.stick_count())
        })?;
        let b = cert.check("3c-4").ok_or("missing 3c-4 check")?;
        ensure((b.lhs, b.rhs, b.holds) == (20, 20, true), || {
            format!("{name}: {b:?}")
        })?;
        ensure(cert.invariant_match.status == MatchStatus::Matched, || {
            format!("{name}: mismatch")
        })?;
    }
    Ok("8_20 and 8_21: 20 sticks, 20 <= 3*8-4 = 20".into())
}

fn sweep() -> Outcome {
    let mut levels = 0;
    let mut constructions = 0;
    for e in dataset::entries() {
        let p = if !e.arcs.is_star_shaped() {
            e.arcs.clone()
        } else if e
            .arcs
            .torus_order_check()
            .map_err(|x| x.to_string())?
            .is_none()
        {
            e.arcs.dual().map_err(|x| x.to_string())?
        } else {
            continue;
        };
        let w = p
            .find_nonstar_witness()
            .ok_or_else(|| format!("{}: no witness", e.name))?;
        let nns = p.normalize_for_nonstar(&w).map_err(|x| x.to_string())?;
        let polys = lift_sweep(&nns).map_err(|x| format!("{}: {x}", e.name))?;
        ensure(polys.len() == nns.lift_page, || {
            format!("{}: {} levels", e.name, polys.len())
        })?;
        for (t, poly) in polys.iter().enumerate() {
            validate_polygon(poly).map_err(|v| format!("{} level {}: {v:?}", e.name, t + 1))?;
        }
        let last = polys.last().unwrap();
        ensure(last.stick_count() == 3 * p.arc_index() - 4, || {
            format!("{}: final level", e.name)
        })?;
        levels += polys.len();
        constructions += 1;
    }
    Ok(format!(
        "{constructions} constructions, {levels} levels valid"
    ))
}

fn main() -> ExitCode {
    let suite = acceptance_suite(SEED, SUITE);
    let built = build_suite(&suite);
    let with_built = |f: fn(&[Built]) -> Outcome| -> Outcome {
        built.as_ref().map_err(|e| e.clone()).and_then(|b| f(b))
    };

    let results: Vec<(&str, Outcome)> = vec![
        ("figure-8 equality", figure_eight()),
        ("torus branch", torus_branch()),
        ("trefoil exception", trefoil_exception()),
        ("stick-count law", with_built(stick_count_law)),
        ("knot-type oracle", with_built(knot_type_oracle)),
        ("star duals", star_duals(&suite)),
        ("algebraic invariants", algebraic(&suite)),
        ("non-alternating bound", non_alternating()),
        ("lift sweep", sweep()),
    ];
    let mut failed = 0;
    for (k, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
