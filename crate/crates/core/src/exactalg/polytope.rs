//! Exact convex hulls in dimension at most 6 and the polar duality used for
//! Alexander norm balls.
//!
//! Facets are found by the double-description method: the facets of
//! `conv(q_i)` are the extreme rays `(a, b)` of the cone
//! `{ a·q_i - b <= 0 }`, computed by adding one constraint at a time.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use super::matrix::{integer_kernel, IntMatrix};
use crate::error::{Error, Result};

pub type QVec = Vec<BigRational>;

pub const MAX_DIM: usize = 6;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| q(x)).collect()
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |s, (x, y)| s + x * y)
}

fn sub(a: &[BigRational], b: &[BigRational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A facet `normal · x <= offset`, with the indices of the polytope vertices
/// lying on it and their average.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: QVec,
    pub offset: BigRational,
    pub vertices: Vec<usize>,
    pub barycenter: QVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FaceData {
    pub facets: Vec<Facet>,
}

/// Polytope given by its extreme points in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<QVec>,
}

impl LatticePolytope {
    /// Extreme points of the convex hull of `points` (any affine dimension).
    pub fn from_points(dim: usize, points: &[QVec]) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let pts: Vec<QVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.is_empty() {
            return Err(Error::Invalid("empty point set".into()));
        }
        let aff = AffineFrame::new(&pts);
        let k = aff.basis.len();
        let vertices = if k == 0 {
            pts.clone()
        } else {
            let local: Vec<QVec> = pts.iter().map(|p| aff.coords(p)).collect();
            let facets = hull_facets(&local);
            extreme_indices(&local, &facets, k).into_iter().map(|i| pts[i].clone()).collect()
        };
        Ok(LatticePolytope { dim, affine_dim: k, vertices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    /// `max_v ω·v` over the vertices.
    pub fn support(&self, w: &[BigRational]) -> BigRational {
        self.vertices.iter().map(|v| dot(w, v)).max().expect("nonempty polytope")
    }

    /// `max_{u,v} ω·(u - v)`.
    pub fn width(&self, w: &[BigRational]) -> BigRational {
        let neg: QVec = w.iter().map(|x| -x).collect();
        self.support(w) + self.support(&neg)
    }

    /// Indices of vertices attaining `support(ω)`.
    pub fn maximizers(&self, w: &[BigRational]) -> Vec<usize> {
        let s = self.support(w);
        (0..self.vertices.len()).filter(|&i| dot(w, &self.vertices[i]) == s).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub polytope: LatticePolytope,
    pub faces: FaceData,
}

/// Exact hull of a full-dimensional point set.
pub fn convex_hull(points: &[QVec]) -> Result<Hull> {
    let dim = points.first().map_or(0, |p| p.len());
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    let pts: Vec<QVec> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if pts.is_empty() {
        return Err(Error::Invalid("empty point set".into()));
    }
    let aff = AffineFrame::new(&pts);
    if aff.basis.len() < dim || dim == 0 {
        return Err(Error::Degenerate { affine_dim: aff.basis.len(), ambient_dim: dim });
    }
    let raw = hull_facets(&pts);
    let keep = extreme_indices(&pts, &raw, dim);
    let vertices: Vec<QVec> = keep.iter().map(|&i| pts[i].clone()).collect();
    let mut facets: Vec<Facet> = raw
        .into_iter()
        .map(|(normal, offset)| {
            let on: Vec<usize> = (0..vertices.len()).filter(|&i| dot(&normal, &vertices[i]) == offset).collect();
            let barycenter = average(on.iter().map(|&i| &vertices[i]), dim);
            Facet { normal, offset, vertices: on, barycenter }
        })
        .collect();
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(Hull { polytope: LatticePolytope { dim, affine_dim: dim, vertices }, faces: FaceData { facets } })
}

pub fn newton_polytope(p: &LaurentPoly) -> Result<LatticePolytope> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let pts: Vec<QVec> = p.exponents().iter().map(|e| e.iter().map(|&x| q(x as i64)).collect()).collect();
    LatticePolytope::from_points(p.nvars(), &pts)
}

/// Unit ball of the seminorm `ω ↦ max_{u,v∈P} ω(u - v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBall {
    /// Vertices of the ball inside the span of `P - P`.
    pub polytope: LatticePolytope,
    /// One facet per vertex `w` of `P - P`: `normal = w`, `offset = 1`.
    pub faces: FaceData,
    /// Integer basis of the directions on which the seminorm vanishes.
    pub lineality: Vec<Vec<BigInt>>,
}

pub fn dual_norm_ball(p: &LatticePolytope) -> Result<DualBall> {
    let n = p.dim;
    let vs = &p.vertices;
    let mut diffs: Vec<QVec> = Vec::new();
    for u in vs {
        for v in vs {
            diffs.push(sub(u, v));
        }
    }
    let frame = AffineFrame::new(&diffs);
    let lineality = lineality_basis(&frame.basis, n);
    let k = frame.basis.len();
    if k == 0 {
        return Ok(DualBall {
            polytope: LatticePolytope { dim: n, affine_dim: 0, vertices: Vec::new() },
            faces: FaceData::default(),
            lineality,
        });
    }
    // hull of the difference body in coordinates on its span (origin-based frame)
    let zero = vec![BigRational::zero(); n];
    let frame = AffineFrame { origin: zero, ..frame };
    let local: Vec<QVec> = diffs.iter().map(|d| frame.coords(d)).collect();
    let facets = hull_facets(&local);
    let extreme = extreme_indices(&local, &facets, k);
    // ball vertex ω in the span with ω·(Bᵀc) = (α/β)·c
    let mut ball_vertices: Vec<QVec> = facets
        .iter()
        .map(|(alpha, beta)| {
            let a: QVec = alpha.iter().map(|x| x / beta).collect();
            let d = frame.gram_solve(&a);
            (0..n).map(|j| (0..k).fold(BigRational::zero(), |s, i| s + &d[i] * &frame.basis[i][j])).collect()
        })
        .collect();
    ball_vertices.sort();
    ball_vertices.dedup();
    let mut dual_of: Vec<QVec> = extreme.iter().map(|&i| diffs[i].clone()).collect::<BTreeSet<_>>().into_iter().collect();
    dual_of.sort();
    let one = BigRational::one();
    let mut faces: Vec<Facet> = dual_of
        .into_iter()
        .map(|w| {
            let on: Vec<usize> = (0..ball_vertices.len()).filter(|&i| dot(&w, &ball_vertices[i]) == one).collect();
            let barycenter = average(on.iter().map(|&i| &ball_vertices[i]), n);
            Facet { normal: w, offset: one.clone(), vertices: on, barycenter }
        })
        .collect();
    faces.sort_by(|a, b| a.vertices.cmp(&b.vertices).then_with(|| a.normal.cmp(&b.normal)));
    Ok(DualBall {
        polytope: LatticePolytope { dim: n, affine_dim: k, vertices: ball_vertices },
        faces: FaceData { facets: faces },
        lineality,
    })
}

fn average<'a>(pts: impl Iterator<Item = &'a QVec>, n: usize) -> QVec {
    let mut sum = vec![BigRational::zero(); n];
    let mut count = 0i64;
    for p in pts {
        for (s, x) in sum.iter_mut().zip(p) {
            *s += x;
        }
        count += 1;
    }
    if count == 0 {
        return sum;
    }
    sum.into_iter().map(|s| s / q(count)).collect()
}

fn lineality_basis(span: &[QVec], n: usize) -> Vec<Vec<BigInt>> {
    if span.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    let rows: Vec<Vec<BigInt>> = span.iter().map(|r| integer_row(r)).collect();
    integer_kernel(&IntMatrix::from_rows(n, &rows))
}

/// Clears denominators and divides by the content.
fn integer_row(r: &[BigRational]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let v: Vec<BigInt> = r.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(v)
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Base point plus a basis of the affine hull's direction space, chosen
/// greedily from the input differences.
struct AffineFrame {
    origin: QVec,
    basis: Vec<QVec>,
    gram_inv: Vec<QVec>,
}

impl AffineFrame {
    fn new(pts: &[QVec]) -> Self {
        let origin = pts[0].clone();
        let mut basis: Vec<QVec> = Vec::new();
        let mut echelon: Vec<(usize, QVec)> = Vec::new();
        for p in &pts[1..] {
            let d = sub(p, &origin);
            let mut r = d.clone();
            for (piv, row) in &echelon {
                if !r[*piv].is_zero() {
                    let f = &r[*piv] / &row[*piv];
                    for j in 0..r.len() {
                        r[j] = &r[j] - &f * &row[j];
                    }
                }
            }
            if let Some(piv) = r.iter().position(|x| !x.is_zero()) {
                echelon.push((piv, r));
                basis.push(d);
            }
        }
        let k = basis.len();
        let gram: Vec<QVec> = (0..k).map(|i| (0..k).map(|j| dot(&basis[i], &basis[j])).collect()).collect();
        let gram_inv = invert(&gram);
        AffineFrame { origin, basis, gram_inv }
    }

    /// Coordinates `c` with `p = origin + Σ c_i basis_i` (p in the hull).
    fn coords(&self, p: &[BigRational]) -> QVec {
        let d = sub(p, &self.origin);
        let b: QVec = self.basis.iter().map(|r| dot(r, &d)).collect();
        self.gram_solve(&b)
    }

    fn gram_solve(&self, b: &[BigRational]) -> QVec {
        self.gram_inv.iter().map(|row| dot(row, b)).collect()
    }
}

fn invert(m: &[QVec]) -> Vec<QVec> {
    let n = m.len();
    let mut a: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("matrix is invertible");
        a.swap(c, p);
        let inv = BigRational::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[r][j] = &a[r][j] - t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

type Bits = Vec<u64>;

fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Facets `(normal, offset)` of the hull of full-dimensional points in
/// `ℚ^k`, with integer-primitive normal/offset pairs.
fn hull_facets(pts: &[QVec]) -> Vec<(QVec, BigRational)> {
    let k = pts[0].len();
    // constraint rows (q_i, -1) scaled to integers
    let rows: Vec<Vec<BigInt>> = pts
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(-BigRational::one());
            integer_row(&r)
        })
        .collect();
    let m = rows.len();
    let words = m.div_ceil(64);
    let eval = |r: &[BigInt], x: &[BigInt]| r.iter().zip(x).fold(BigInt::zero(), |s, (a, b)| s + a * b);

    // initial simplex: k+1 linearly independent rows
    let mut chosen: Vec<usize> = Vec::new();
    let mut ech: Vec<(usize, QVec)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r: QVec = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (piv, e) in &ech {
            if !r[*piv].is_zero() {
                let f = &r[*piv] / &e[*piv];
                for j in 0..=k {
                    r[j] = &r[j] - &f * &e[j];
                }
            }
        }
        if let Some(piv) = r.iter().position(|x| !x.is_zero()) {
            ech.push((piv, r));
            chosen.push(i);
            if chosen.len() == k + 1 {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), k + 1, "points must be full-dimensional");
    let a0: Vec<QVec> = chosen
        .iter()
        .map(|&i| rows[i].iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let inv = invert(&a0);
    let mut rays: Vec<(Vec<BigInt>, Bits)> = (0..=k)
        .map(|j| {
            let col: QVec = (0..=k).map(|i| -inv[i][j].clone()).collect();
            let r = integer_row(&col);
            let mut z = vec![0u64; words];
            for (jj, &ci) in chosen.iter().enumerate() {
                if jj != j {
                    bit_set(&mut z, ci);
                }
            }
            (r, z)
        })
        .collect();

    let chosen_set: BTreeSet<usize> = chosen.iter().copied().collect();
    let mut processed: Vec<usize> = chosen.clone();
    for i in 0..m {
        if chosen_set.contains(&i) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|(r, _)| eval(&rows[i], r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        processed.push(i);
        if pos.is_empty() {
            for (j, v) in vals.iter().enumerate() {
                if v.is_zero() {
                    bit_set(&mut rays[j].1, i);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for &p in &pos {
            for &nn in &neg {
                let common: Bits = rays[p].1.iter().zip(&rays[nn].1).map(|(a, b)| a & b).collect();
                if (common.iter().map(|w| w.count_ones() as usize).sum::<usize>()) + 1 < k {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|t| t == p || t == nn || !subset(&common, &rays[t].1));
                if !adjacent {
                    continue;
                }
                let (vp, vn) = (&vals[p], &vals[nn]);
                let r: Vec<BigInt> = rays[nn].0.iter().zip(&rays[p].0).map(|(a, b)| vp * a - vn * b).collect();
                let mut z = common;
                bit_set(&mut z, i);
                next.push((primitive(r), z));
            }
        }
        for j in 0..rays.len() {
            if !vals[j].is_positive() {
                let mut z = rays[j].1.clone();
                if vals[j].is_zero() {
                    bit_set(&mut z, i);
                }
                next.push((rays[j].0.clone(), z));
            }
        }
        rays = next;
    }
    let mut out: Vec<(QVec, BigRational)> = rays
        .into_iter()
        .filter(|(r, _)| r[..k].iter().any(|x| !x.is_zero()))
        .map(|(r, _)| {
            let normal: QVec = r[..k].iter().map(|x| BigRational::from_integer(x.clone())).collect();
            (normal, BigRational::from_integer(r[k].clone()))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Points whose tight facets have normals of full rank `k`.
fn extreme_indices(pts: &[QVec], facets: &[(QVec, BigRational)], k: usize) -> Vec<usize> {
    (0..pts.len())
        .filter(|&i| {
            let tight: Vec<QVec> = facets.iter().filter(|(a, b)| dot(a, &pts[i]) == *b).map(|(a, _)| a.clone()).collect();
            rank_q(&tight) == k
        })
        .collect()
}

fn rank_q(rows: &[QVec]) -> usize {
    let mut ech: Vec<(usize, QVec)> = Vec::new();
    for row in rows {
        let mut r = row.clone();
        for (piv, e) in &ech {
            if !r[*piv].is_zero() {
                let f = &r[*piv] / &e[*piv];
                for j in 0..r.len() {
                    r[j] = &r[j] - &f * &e[j];
                }
            }
        }
        if let Some(piv) = r.iter().position(|x| !x.is_zero()) {
            ech.push((piv, r));
        }
    }
    ech.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::laurent::var_names;

    fn cube() -> Vec<QVec> {
        let mut v = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    v.push(qvec(&[x, y, z]));
                }
            }
        }
        v
    }

    fn octahedron() -> Vec<QVec> {
        let mut v = Vec::new();
        for i in 0..3 {
            for s in [-1, 1] {
                let mut e = vec![0; 3];
                e[i] = s;
                v.push(qvec(&e));
            }
        }
        v
    }

    #[test]
    fn cube_hull() {
        let mut pts = cube();
        pts.push(vec![q(1) / q(2); 3]);
        let h = convex_hull(&pts).unwrap();
        assert_eq!(h.polytope.vertices().len(), 8);
        assert_eq!(h.faces.facets.len(), 6);
        assert!(h.faces.facets.iter().all(|f| f.vertices.len() == 4));
    }

    #[test]
    fn octahedron_hull() {
        let h = convex_hull(&octahedron()).unwrap();
        assert_eq!(h.polytope.vertices().len(), 6);
        assert_eq!(h.faces.facets.len(), 8);
        let f = &h.faces.facets[0];
        assert_eq!(f.barycenter.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![q(1) / q(3); 3]);
    }

    #[test]
    fn degenerate_reports_dimension() {
        let pts = vec![qvec(&[0, 0]), qvec(&[1, 1]), qvec(&[2, 2])];
        assert_eq!(convex_hull(&pts), Err(Error::Degenerate { affine_dim: 1, ambient_dim: 2 }));
        let p = LatticePolytope::from_points(2, &pts).unwrap();
        assert_eq!(p.vertices(), &[qvec(&[0, 0]), qvec(&[2, 2])]);
    }

    #[test]
    fn square_ball() {
        let vs = var_names(&["x", "y"]);
        let x = LaurentPoly::var(vs.clone(), 0);
        let y = LaurentPoly::var(vs.clone(), 1);
        let one = LaurentPoly::one(vs);
        let p = x.sub(&one).mul(&y.sub(&one));
        let np = newton_polytope(&p).unwrap();
        assert_eq!(np.vertices().len(), 4);
        let ball = dual_norm_ball(&np).unwrap();
        assert_eq!(
            ball.polytope.vertices(),
            &[qvec(&[-1, 0]), qvec(&[0, -1]), qvec(&[0, 1]), qvec(&[1, 0])]
        );
        assert_eq!(ball.faces.facets.len(), 4);
        assert!(ball.lineality.is_empty());
    }

    #[test]
    fn point_ball_is_everything() {
        let np = LatticePolytope::from_points(2, &[qvec(&[3, 1])]).unwrap();
        let ball = dual_norm_ball(&np).unwrap();
        assert!(ball.polytope.vertices().is_empty());
        assert_eq!(ball.lineality.len(), 2);
    }

    #[test]
    fn segment_ball_has_lineality() {
        let np = LatticePolytope::from_points(2, &[qvec(&[0, 0]), qvec(&[2, 0])]).unwrap();
        let ball = dual_norm_ball(&np).unwrap();
        assert_eq!(ball.polytope.vertices(), &[vec![q(-1) / q(2), q(0)], vec![q(1) / q(2), q(0)]]);
        assert_eq!(ball.lineality.len(), 1);
        assert_eq!(ball.lineality[0][0], BigInt::zero());
    }
}
