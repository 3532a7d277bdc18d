//! One line per acceptance criterion. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use fiberface::alexander::{alexander_ball, alexander_polynomial, basis_equivalence, NormBall};
use fiberface::arith::{
    betti_lower_bound, deuring_mismatches, face_bound, first_special_primes, special_density, special_primes_checked, tower_degree, whitehead_faces,
    EllipticCurve,
};
use fiberface::dualsurface::SearchConfig;
use fiberface::exactalg::laurent::var_names;
use fiberface::exactalg::{AbelianGroup, LaurentPoly};
use fiberface::fibering::{face_count_ledger, whitehead_cover, FiberOptions, Verdict, WHITEHEAD_TRI};
use fiberface::fpgroup::{cover_chain, reidemeister_schreier, CosetTable, Presentation};
use fiberface::triangulation::Triangulation;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn base_group() -> Presentation {
    Presentation::parse(include_str!("../fixtures/b_orbifold.pres")).unwrap()
}

/// `16xyz − xy − xz − y − z + 16`.
fn reference_factor() -> LaurentPoly {
    let vs = var_names(&["x", "y", "z"]);
    let term = |e: [i32; 3], c: i64| (e.to_vec(), BigInt::from(c));
    LaurentPoly::from_terms(vs, vec![term([1, 1, 1], 16), term([1, 1, 0], -1), term([1, 0, 1], -1), term([0, 1, 0], -1), term([0, 0, 1], -1), term([0, 0, 0], 16)])
}

fn criterion_1() -> Outcome {
    let b = base_group();
    let chain = cover_chain(&b, &[2, 2], 4, &AbelianGroup::new(1, &[28, 28])).map_err(|e| e.to_string())?;
    ensure(chain.selected.len() == 2, format!("{} cyclic covers of C match, expected 2", chain.selected.len()))?;
    ensure(chain.m.degree() == 64, format!("index {}", chain.m.degree()))?;
    let want = AbelianGroup::new(3, &[2, 2, 14, 14, 14, 14]);
    ensure(chain.m_homology == want, format!("H1(M) = {}", chain.m_homology))?;
    Ok(format!("C: H1 = {}; {} of {} Z/4 covers match; index {}; H1(M) = {}", chain.c.homology, chain.selected.len(), chain.cyclic.len(), chain.m.degree(), chain.m_homology))
}

fn is_parallelepiped(ball: &NormBall) -> bool {
    ball.dim == 3 && ball.vertices.len() == 8 && ball.faces.len() == 6 && ball.faces.iter().all(|f| f.vertices.len() == 4) && ball.antipodal_pairs().len() == 3
}

fn parallel(a: &[BigRational], b: &[BigRational]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn criterion_2() -> Outcome {
    let b = base_group();
    let chain = cover_chain(&b, &[2, 2], 4, &AbelianGroup::new(1, &[28, 28])).map_err(|e| e.to_string())?;
    let m = reidemeister_schreier(&b, &chain.m).presentation;
    let data = alexander_polynomial(&m).map_err(|e| e.to_string())?;
    let target = reference_factor().pow(4);
    ensure(basis_equivalence(&data.delta, &target.with_vars(data.delta.vars().clone())).is_some(), "Delta_M is not (16xyz-xy-xz-y-z+16)^4 in any basis")?;
    let ball = alexander_ball(&data.delta).map_err(|e| e.to_string())?;
    ensure(is_parallelepiped(&ball), "ball is not a parallelepiped")?;
    let mut coeffs: Vec<BigInt> = ball.faces.iter().map(|f| f.coefficient.abs()).collect();
    coeffs.sort();
    let big = BigInt::from(16).pow(4);
    ensure(coeffs == vec![BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one(), big.clone(), big], format!("face coefficients {coeffs:?}"))?;
    let pairs = ball.antipodal_pairs();
    let failing: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(i, _)| !ball.faces[i].obstruction_passes()).collect();
    let passing = pairs.len() - failing.len();
    ensure(failing.len() == 1 && passing == 2, format!("{} failing pairs, {passing} passing", failing.len()))?;
    // the failing faces sit at the two ends of one axis of the combinatorial cube
    let (f, g) = failing[0];
    let (bf, bg) = (&ball.faces[f].barycenter, &ball.faces[g].barycenter);
    ensure(bf.iter().zip(bg).all(|(x, y)| x == &-y), "failing barycenters are not antipodal")?;
    let axis_edges = ball.faces[f].vertices.iter().all(|&v| {
        ball.faces[g].vertices.iter().any(|&w| {
            let d: Vec<BigRational> = ball.vertices[v].iter().zip(&ball.vertices[w]).map(|(a, b)| a - b).collect();
            parallel(&d, bf)
        })
    });
    ensure(axis_edges, "barycenter line is not parallel to the connecting edges")?;
    let bary: Vec<String> = bf.iter().map(|x| x.to_string()).collect();
    Ok(format!(
        "Delta_M ~ f^4 ({} terms); parallelepiped; coefficients 1,1,1,1,16^4,16^4; 2 faces fail, 4 faces pass; failing barycenter line through ({})",
        data.delta.term_count(),
        bary.join(", ")
    ))
}

fn criterion_3() -> Outcome {
    let b = base_group();
    let table = CosetTable::parse(include_str!("../fixtures/n_cover.table"), &b).map_err(|e| e.to_string())?;
    let n = reidemeister_schreier(&b, &table).presentation;
    let h = n.abelianization();
    ensure(h == AbelianGroup::new(1, &[4, 8]), format!("H1(N) = {h}"))?;
    let data = alexander_polynomial(&n).map_err(|e| e.to_string())?;
    let vs = data.delta.vars().clone();
    let t = |e: i32, c: i64| (vec![e], BigInt::from(c));
    let want = LaurentPoly::from_terms(vs, vec![t(4, 1), t(2, 30), t(0, 1)]);
    ensure(data.delta.canonical() == want.canonical(), format!("Delta_N = {}", data.delta.pretty()))?;
    let ball = alexander_ball(&data.delta).map_err(|e| e.to_string())?;
    ensure(ball.faces.iter().all(|f| f.obstruction_passes()), "an obstruction face fails")?;
    Ok(format!("H1(N) = {h}; Delta_N = {}; {} faces pass", data.delta.pretty(), ball.faces.len()))
}

fn criterion_4() -> Outcome {
    let base = Triangulation::parse(WHITEHEAD_TRI).unwrap();
    let mut parts = Vec::new();
    for n in 1..=2usize {
        let wc = whitehead_cover(&base, n).map_err(|e| e.to_string())?;
        let faces = whitehead_faces(n as u32).unwrap() as usize;
        ensure(wc.is_cross_polytope(), format!("W_{n}: ball is not a cross-polytope"))?;
        ensure(wc.ball.faces.len() == faces, format!("W_{n}: {} faces", wc.ball.faces.len()))?;
        let certs = wc.certify_sign_classes(&FiberOptions::default()).map_err(|e| e.to_string())?;
        for (c, cert) in wc.sign_classes().iter().zip(&certs) {
            ensure(cert.verdict == Verdict::Fibers, format!("W_{n}: sign class {c:?} not certified: {:?}", cert.reason))?;
            ensure(cert.euler == -(n as i64 + 1), format!("W_{n}: sign class {c:?} has chi {}", cert.euler))?;
        }
        let (pairs, excluded) = face_count_ledger(&wc.ball, &wc.sign_classes());
        ensure(excluded.is_empty() && 2 * pairs == faces, format!("W_{n}: ledger {pairs} pairs"))?;
        let cfg = SearchConfig { budget: 1000, seed: 0, workers: 4, ..Default::default() };
        let bounds = wc.vertex_bounds(&cfg).map_err(|e| e.to_string())?;
        ensure(bounds.iter().all(|&x| x == 1), format!("W_{n}: vertex bounds {bounds:?}"))?;
        parts.push(format!("W_{n}: {} tets, {faces} faces all fibered with chi {}, vertex bounds 1", wc.triangulation().ntets(), -(n as i64 + 1)));
    }
    parts.push("n = 3 not run".into());
    Ok(parts.join("; "))
}

fn criterion_5() -> Outcome {
    let ps = special_primes_checked(80);
    ensure(ps == [13, 19, 31, 61, 73], format!("P starts {ps:?}"))?;
    ensure(first_special_primes(5) == ps, "first_special_primes disagrees")?;
    let density = special_density(1_000_000);
    ensure((density - 0.25).abs() <= 0.02, format!("density {density}"))?;
    ensure(tower_degree(1) == BigUint::from(196u32) && tower_degree(2) == BigUint::from(78400u32), "d_1, d_2")?;
    for n in 1..=50 {
        ensure(face_bound(n).map_err(|e| e.to_string())?.holds, format!("face bound fails at n = {n}"))?;
    }
    let b = betti_lower_bound(1).map_err(|e| e.to_string())?;
    ensure(b.genus == BigInt::from(7) && b.new7 == BigRational::from_integer(BigInt::from(5)), format!("g0 = {}, new = {}", b.genus, b.new7))?;
    let bad = deuring_mismatches(10_000);
    ensure(bad.is_empty(), format!("trace and symbol disagree at {bad:?}"))?;
    let e = EllipticCurve::cm49();
    ensure(e.ap(3) == Ok(0) && e.ap(2) == Ok(1), "small traces")?;
    Ok(format!("P = 13,19,31,61,73,...; density {density:.4}; d_1 = 196, d_2 = 78400; face bound holds n = 1..50; g0(91) = 7, 7-new 5; traces agree below 10^4"))
}

fn run_property<S: Strategy>(name: &str, cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn criterion_6() -> Outcome {
    const CASES: u32 = 1000;
    use common::*;
    let moves = || prop::collection::vec((any::<bool>(), any::<usize>()), 1..8);
    run_property("smith", CASES, small_matrix(), |m| check_determinantal(&m))?;
    run_property("fox", CASES, (word(3, 14), prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 3)), |(w, i)| check_fox(&w, &i))?;
    run_property("fox-matrix", CASES, word(3, 12), |w| check_fox_matrix(&w))?;
    run_property("pachner", CASES, moves(), |m| check_pachner(whitehead(), &m))?;
    run_property("shortcut", CASES, (-4i64..=4, -4i64..=4), |(a, b)| check_shortcut(whitehead(), &[a, b]))?;
    run_property("gcd", CASES, (laurent2(), laurent2(), laurent2()), |(p, q, r)| check_gcd(&p, &q, &r))?;
    run_property("replay", CASES, (-2i64..=2, -2i64..=2, 0u64..1000), |(a, b, s)| check_replay(&[a, b], s))?;
    Ok(format!("{CASES} cases each: smith, fox, fox-matrix, pachner, shortcut, gcd, replay"))
}

use proptest::test_runner::TestCaseError;

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("cover-chain homology", criterion_1),
        ("Alexander data of M", criterion_2),
        ("N-cover", criterion_3),
        ("Whitehead tower", criterion_4),
        ("arithmetic tower", criterion_5),
        ("property suites", criterion_6),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({secs:.1}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({secs:.1}s) {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
