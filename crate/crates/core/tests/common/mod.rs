//! Property checks and strategies shared by the property suites and the
//! acceptance runner. Each check recomputes its expectation independently.

#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use fiberface::alexander::{fox_derivative, fox_matrix, AbelianizationMap};
use fiberface::dualsurface::build_dual_surface;
use fiberface::exactalg::laurent::var_names;
use fiberface::exactalg::{laurent_gcd, smith_normal_form, IntMatrix, LaurentPoly};
use fiberface::fibering::{certify_fiber, FiberOptions, WHITEHEAD_TRI};
use fiberface::fpgroup::{replay, Presentation, Word};
use fiberface::triangulation::cocycle::holonomy;
use fiberface::triangulation::{homology, pachner_23, pachner_32, peripheral_basis, valid_23_faces, valid_32_edges, Cocycle, DualTree, Triangulation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn whitehead() -> &'static Triangulation {
    static T: OnceLock<Triangulation> = OnceLock::new();
    T.get_or_init(|| Triangulation::parse(WHITEHEAD_TRI).unwrap())
}

pub fn figure8() -> &'static Triangulation {
    static T: OnceLock<Triangulation> = OnceLock::new();
    T.get_or_init(|| Triangulation::parse(include_str!("../../fixtures/figure8.tri")).unwrap())
}

// ---- determinantal divisors ----

pub fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (0..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| { s.push(last); s })).collect()
}

/// Leibniz expansion, kept apart from the library's elimination.
fn det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// `d₁⋯d_k` equals the gcd of the `k × k` minors for every `k`.
pub fn check_determinantal(rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let (r, c) = (rows.len(), rows[0].len());
    let snf = smith_normal_form(&IntMatrix::from_rows(c, rows));
    let diag = snf.diagonal();
    let mut prod = BigInt::from(1);
    for k in 1..=r.min(c) {
        prod *= &diag[k - 1];
        let mut g = 0i64;
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j]).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        prop_assert_eq!(prod.abs(), BigInt::from(g), "k = {}", k);
    }
    for (i, d) in diag.iter().enumerate().skip(1) {
        prop_assert!(d.is_zero() || (!diag[i - 1].is_zero() && (d % &diag[i - 1]).is_zero()));
    }
    Ok(())
}

// ---- Fox calculus ----

pub fn word(ngens: i32, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..=ngens, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g }), 0..=max_len)
}

/// `Σ_j (∂w/∂x_j)(t^{φ(x_j)} − 1) = t^{φ(w)} − 1` with `φ` given by explicit
/// images into `ℤ²`.
pub fn check_fox(w: &[i32], images: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let n = images.len();
    let p = Presentation::free(n);
    let phi = AbelianizationMap::from_images(&p, images.to_vec()).unwrap();
    let vars = var_names(&["s", "t"]);
    let word = Word::new(w.iter().copied());
    let mono = |e: &[i64]| LaurentPoly::monomial(vars.clone(), e.iter().map(|&x| x as i32).collect(), 1);
    let one = LaurentPoly::one(vars.clone());
    let mut lhs = LaurentPoly::zero(vars.clone());
    for (j, img) in images.iter().enumerate() {
        lhs = lhs.add(&fox_derivative(&word, j, &phi, &vars).mul(&mono(img).sub(&one)));
    }
    // φ(w) by summing letters directly
    let mut e = vec![0i64; 2];
    for &l in w {
        for (a, b) in e.iter_mut().zip(&images[l.unsigned_abs() as usize - 1]) {
            *a += l.signum() as i64 * b;
        }
    }
    prop_assert_eq!(lhs, mono(&e).sub(&one));
    Ok(())
}

/// The identity on every row of the Fox matrix of a one-relator group.
pub fn check_fox_matrix(w: &[i32]) -> Result<(), TestCaseError> {
    let p = Presentation::with_numbered_gens(3, vec![Word::new(w.iter().copied())]);
    let phi = AbelianizationMap::from_presentation(&p);
    let vars: Arc<[String]> = (0..phi.rank).map(|i| format!("t{i}")).collect::<Vec<_>>().into();
    let m = fox_matrix(&p, &phi, &vars);
    prop_assert!(fiberface::alexander::fox::fundamental_identity_holds(&p, &phi, &vars, &m));
    Ok(())
}

// ---- Pachner moves ----

/// Integral lattice spanned by `rows`, in Hermite normal form.
fn hermite(rows: Vec<Vec<i64>>, k: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = rows.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    let mut out = Vec::new();
    for col in 0..k {
        loop {
            let nz: Vec<usize> = (0..m.len()).filter(|&i| m[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| m[i][col].abs()).unwrap();
            for &i in &nz {
                if i != piv {
                    let q = Integer::div_floor(&m[i][col], &m[piv][col]);
                    for j in 0..k {
                        m[i][j] -= q * m[piv][j];
                    }
                }
            }
        }
        if let Some(i) = (0..m.len()).find(|&i| m[i][col] != 0) {
            let mut r = m.remove(i);
            if r[col] < 0 {
                r.iter_mut().for_each(|x| *x = -*x);
            }
            out.push(r);
        }
        m.retain(|r| r.iter().any(|&x| x != 0));
    }
    // reduce entries above pivots
    for i in 0..out.len() {
        let col = out[i].iter().position(|&x| x != 0).unwrap();
        for h in 0..i {
            let q = Integer::div_floor(&out[h][col], &out[i][col]);
            for j in 0..k {
                out[h][j] -= q * out[i][j];
            }
        }
    }
    out
}

/// Values of the classes on all loops, as a lattice in `ℤ^k`.
pub fn pairing_lattice(t: &Triangulation, classes: &[Cocycle]) -> Vec<Vec<i64>> {
    let tree = DualTree::new(t);
    let hol: Vec<Vec<i64>> = classes.iter().map(|c| holonomy(t, &tree, c)).collect();
    let rows = (0..tree.generators.len()).map(|g| hol.iter().map(|h| h[g]).collect()).collect();
    hermite(rows, classes.len())
}

/// Transported basis together with a mixed combination, so that broken
/// linearity would show up in the lattice.
fn probe_classes(t: &Triangulation) -> Vec<Cocycle> {
    let b = peripheral_basis(t).unwrap();
    let mut out = b.clone();
    out.push(b.iter().enumerate().fold(Cocycle::zero(t), |acc, (i, c)| acc.add(&c.scale(i as i64 + 2))));
    out
}

/// Random moves preserve H₁ and the pairing lattice of transported classes.
pub fn check_pachner(t: &Triangulation, choices: &[(bool, usize)]) -> Result<(), TestCaseError> {
    let h0 = homology(t);
    let classes = probe_classes(t);
    let lat0 = pairing_lattice(t, &classes);
    let (mut tri, mut cur) = (t.clone(), classes);
    for &(up, pick) in choices {
        let faces = valid_23_faces(&tri);
        let edges = valid_32_edges(&tri);
        let r = if (up || edges.is_empty()) && !faces.is_empty() {
            pachner_23(&tri, faces[pick % faces.len()])
        } else if !edges.is_empty() {
            pachner_32(&tri, edges[pick % edges.len()])
        } else {
            continue;
        }
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
        cur = cur.iter().map(|c| r.transport.apply(c)).collect();
        tri = r.triangulation;
        for c in &cur {
            prop_assert!(c.check(&tri).is_ok());
        }
        prop_assert_eq!(homology(&tri), h0.clone());
    }
    prop_assert_eq!(pairing_lattice(&tri, &cur), lat0);
    Ok(())
}

// ---- dual surfaces ----

pub fn check_shortcut(t: &Triangulation, coeffs: &[i64]) -> Result<(), TestCaseError> {
    let b = peripheral_basis(t).unwrap();
    let c = Cocycle::combine(t, &b, coeffs);
    let s = build_dual_surface(t, &c).unwrap();
    prop_assert_eq!(s.euler(), s.shortcut_euler());
    prop_assert_eq!(s.euler(), s.components.iter().map(|c| c.euler).sum::<i64>());
    Ok(())
}

// ---- gcd ----

pub fn laurent2() -> impl Strategy<Value = Vec<(i32, i32, i64)>> {
    prop::collection::vec((-2i32..=2, -2i32..=2, -4i64..=4), 1..=4)
}

pub fn poly(terms: &[(i32, i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(var_names(&["x", "y"]), terms.iter().map(|&(a, b, c)| (vec![a, b], BigInt::from(c))).collect::<Vec<_>>())
}

/// The gcd divides both inputs exactly, and a planted common factor divides
/// the gcd.
pub fn check_gcd(p: &[(i32, i32, i64)], q: &[(i32, i32, i64)], r: &[(i32, i32, i64)]) -> Result<(), TestCaseError> {
    let (p, q, r) = (poly(p), poly(q), poly(r));
    if p.is_zero() || q.is_zero() || r.is_zero() {
        return Ok(());
    }
    let (a, b) = (p.mul(&r), q.mul(&r));
    let g = laurent_gcd(&a, &b).unwrap();
    for x in [&a, &b] {
        let quot = x.div_exact(&g);
        prop_assert!(quot.is_some());
        prop_assert_eq!(quot.unwrap().mul(&g), x.clone());
    }
    prop_assert!(g.div_exact(&r).is_some(), "planted factor lost");
    Ok(())
}

// ---- certificates ----

pub fn check_replay(coeffs: &[i64], seed: u64) -> Result<(), TestCaseError> {
    let t = whitehead();
    if coeffs.iter().all(|&x| x == 0) {
        return Ok(());
    }
    let b = peripheral_basis(t).unwrap();
    let c = Cocycle::combine(t, &b, coeffs);
    let opts = FiberOptions { seed, ..Default::default() };
    let cert = certify_fiber(t, &c, &opts).unwrap();
    let replayed = replay(&cert.complement, &cert.log).unwrap();
    prop_assert_eq!(replayed.to_string(), cert.simplified.to_string());
    prop_assert_eq!(cert.replay().unwrap(), cert.verdict);
    let again = certify_fiber(t, &c, &opts).unwrap();
    prop_assert_eq!(again.report().to_string(), cert.report().to_string());
    Ok(())
}
