mod common;

use fiberface::alexander::{alexander_norm, norm_sandwich, Sandwich};
use fiberface::arith::{face_bound, genus_gamma0, primes_below, special_primes, EllipticCurve};
use fiberface::exactalg::AbelianGroup;
use fiberface::fibering::{chain_transfer, face_count_ledger, whitehead_cover, FiberOptions, Verdict, WHITEHEAD_TRI};
use fiberface::fpgroup::{cover_chain, CosetTable, Presentation};
use fiberface::triangulation::Triangulation;
use num_bigint::BigInt;

fn base_group() -> Presentation {
    Presentation::parse(include_str!("../fixtures/b_orbifold.pres")).unwrap()
}

#[test]
fn m_fixture_matches_computed_chain() {
    let b = base_group();
    let chain = cover_chain(&b, &[2, 2], 4, &AbelianGroup::new(1, &[28, 28])).unwrap();
    let fixture = CosetTable::parse(include_str!("../fixtures/m_cover.table"), &b).unwrap();
    assert_eq!(chain.m.standardize(), fixture.standardize());
    assert_eq!(chain.c.homology, AbelianGroup::new(1, &[4, 4]));
}

#[test]
fn n_fibering_would_pass_to_m() {
    let b = base_group();
    let n = CosetTable::parse(include_str!("../fixtures/n_cover.table"), &b).unwrap();
    let m = CosetTable::parse(include_str!("../fixtures/m_cover.table"), &b).unwrap();
    let chain = chain_transfer(&b, &n, &m, Verdict::Fibers);
    assert_eq!((chain.index_n, chain.index_m, chain.index_y), (8, 64, 128));
    assert_eq!((chain.down_n.base_b1, chain.down_n.cover_b1), (1, 3));
    assert!(!chain.down_n.manifold_iff && chain.down_n.class_fibers);
    assert!(chain.down_m.manifold_iff);
    assert!(chain.n_implies_m);
    let unknown = chain_transfer(&b, &n, &m, Verdict::Unknown);
    assert!(!unknown.down_m.class_fibers);
}

/// Squarefree levels counted by brute force over residues.
fn genus_by_counting(n: u64) -> u64 {
    let count = |f: &dyn Fn(u64) -> u64| (0..n).filter(|&x| f(x) % n == 0).count() as i64;
    let (e2, e3) = (count(&|x| x * x + 1), count(&|x| x * x + x + 1));
    let ps: Vec<u64> = (2..=n).filter(|&p| n % p == 0 && (2..p).all(|d| p % d != 0)).collect();
    let mu: i64 = ps.iter().map(|&p| p as i64 + 1).product();
    let twelve_g = 12 + mu - 3 * e2 - 4 * e3 - 6 * (1 << ps.len());
    assert_eq!(twelve_g % 12, 0);
    (twelve_g / 12) as u64
}

#[test]
fn genus_integral_for_squarefree_levels() {
    let squarefree = |n: u64| (2..).take_while(|d| d * d <= n).all(|d| n % (d * d) != 0);
    for n in (2..=10_000).filter(|&n| squarefree(n)) {
        let g = genus_gamma0(n).unwrap();
        if n <= 1500 {
            assert_eq!(g, genus_by_counting(n), "N = {n}");
        }
    }
}

#[test]
fn degree_ratio_tends_to_one() {
    let r = face_bound(10_000).unwrap().ratio;
    assert!((0.8..=1.2).contains(&r), "{r}");
    assert!((r - 1.0).abs() < (face_bound(100).unwrap().ratio - 1.0).abs());
}

#[test]
fn traces_by_two_counts() {
    let e = EllipticCurve::cm49();
    for p in primes_below(1500).into_iter().filter(|&p| p != 7) {
        assert_eq!(e.ap(p).unwrap(), e.ap_exhaustive(p).unwrap(), "p = {p}");
    }
    for p in special_primes(2000) {
        assert_eq!(e.ap_exhaustive(p).unwrap(), 0);
    }
}

#[test]
fn second_whitehead_cover_ball() {
    let base = Triangulation::parse(WHITEHEAD_TRI).unwrap();
    let wc = whitehead_cover(&base, 2).unwrap();
    assert!(wc.is_cross_polytope());
    assert_eq!(wc.ball.faces.len(), fiberface::arith::whitehead_faces(2).unwrap() as usize);
    assert!(wc.ball.faces.iter().all(|f| f.obstruction_passes()));
    let (pairs, excluded) = face_count_ledger(&wc.ball, &wc.sign_classes());
    assert_eq!((2 * pairs, excluded.len()), (8, 0));
    // a vertex class sits on a face boundary
    let (_, ex) = face_count_ledger(&wc.ball, &wc.vertex_classes[..1]);
    assert_eq!(ex.len(), 1);
}

#[test]
fn fibered_classes_realize_the_alexander_norm() {
    let base = Triangulation::parse(WHITEHEAD_TRI).unwrap();
    let wc = whitehead_cover(&base, 1).unwrap();
    let certs = wc.certify_sign_classes(&FiberOptions::default()).unwrap();
    let mut bounds = Vec::new();
    for (c, cert) in wc.sign_classes().iter().zip(&certs) {
        assert_eq!(cert.verdict, Verdict::Fibers);
        let a = alexander_norm(&wc.alexander.delta, c).unwrap();
        assert_eq!(BigInt::from(-cert.euler), a);
        bounds.push((c.clone(), BigInt::from(-cert.euler)));
    }
    for s in norm_sandwich(&wc.alexander.delta, &bounds).unwrap() {
        assert!(matches!(s, Sandwich::Certified { .. }), "{s:?}");
    }
}
