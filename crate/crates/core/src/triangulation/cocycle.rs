//! Integral simplicial 1-cocycles, their lifts to tetrahedra, and bases of H¹.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::alexander::AbelianizationMap;
use crate::error::{Error, Result};
use crate::exactalg::matrix::{integer_kernel, solve_integer};
use crate::exactalg::{smith_normal_form, IntMatrix};
use crate::fpgroup::Presentation;

use super::complex::{edge_slot, face_vertices, Triangulation};
use super::homology::{face_boundary_matrix, DualTree};

/// One integer per oriented edge class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cocycle(pub Vec<i64>);

impl Cocycle {
    pub fn zero(t: &Triangulation) -> Self {
        Cocycle(vec![0; t.edges().len()])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Value on slot `slot` of `tet`, read from its lower to its higher vertex.
    pub fn on_slot(&self, t: &Triangulation, tet: usize, slot: usize) -> i64 {
        let (e, s) = t.edge_of(tet, slot);
        s * self.0[e]
    }

    /// Signed sum around every face vanishes.
    pub fn check(&self, t: &Triangulation) -> Result<()> {
        if self.0.len() != t.edges().len() {
            return Err(Error::Invalid(format!("cocycle has {} values for {} edges", self.0.len(), t.edges().len())));
        }
        for (i, fc) in t.faces().iter().enumerate() {
            let (tet, f) = fc.sides[0];
            let [a, b, c] = face_vertices(f);
            let sum = self.on_slot(t, tet, edge_slot(a, b)) + self.on_slot(t, tet, edge_slot(b, c)) - self.on_slot(t, tet, edge_slot(a, c));
            if sum != 0 {
                return Err(Error::Invalid(format!("cocycle condition fails on face {i} (sum {sum})")));
            }
        }
        Ok(())
    }

    /// Per tetrahedron, the integer lift of each vertex with vertex 0 at 0.
    pub fn tet_lifts(&self, t: &Triangulation) -> Vec<[i64; 4]> {
        (0..t.ntets())
            .map(|tet| {
                let mut l = [0i64; 4];
                for v in 1..4 {
                    l[v] = self.on_slot(t, tet, edge_slot(0, v));
                }
                l
            })
            .collect()
    }

    /// The cocycle whose value on each edge is the lift difference in any
    /// tetrahedron containing it.
    pub fn from_tet_lifts(t: &Triangulation, lifts: &[[i64; 4]]) -> Self {
        Cocycle(
            t.edges()
                .iter()
                .map(|e| {
                    let emb = e.embeddings[0];
                    lifts[emb.tet][emb.head] - lifts[emb.tet][emb.tail]
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        Cocycle(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Cocycle {
        Cocycle(self.0.iter().map(|a| k * a).collect())
    }

    /// `δ` of the indicator of vertex class `v`.
    pub fn coboundary(t: &Triangulation, v: usize) -> Cocycle {
        Cocycle(t.edges().iter().map(|e| (e.head == v) as i64 - (e.tail == v) as i64).collect())
    }

    /// Integer combination of cocycles.
    pub fn combine(t: &Triangulation, basis: &[Cocycle], coeffs: &[i64]) -> Cocycle {
        let mut out = Cocycle::zero(t);
        for (b, &c) in basis.iter().zip(coeffs) {
            out = out.add(&b.scale(c));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some("cocycle v1") {
            return Err(Error::parse(1, "expected header `cocycle v1`"));
        }
        let vals = lines
            .flat_map(|l| l.split_whitespace())
            .map(|w| w.parse::<i64>().map_err(|_| Error::parse(2, format!("bad value {w:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cocycle(vals))
    }
}

impl fmt::Display for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cocycle v1")?;
        let vals: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        writeln!(f, "{}", vals.join(" "))
    }
}

/// Change of sheet when crossing face `face` of `tet`: lift of a shared
/// vertex on this side minus its lift on the other side.
pub fn gluing_shift(t: &Triangulation, lifts: &[[i64; 4]], tet: usize, face: usize) -> i64 {
    let g = t.gluing(tet, face).expect("glued face");
    let v = (face + 1) % 4;
    lifts[tet][v] - lifts[g.tet][g.perm.apply(v)]
}

/// Value of the class on each generator of [`fundamental_group`](super::fundamental_group).
pub fn holonomy(t: &Triangulation, tree: &DualTree, omega: &Cocycle) -> Vec<i64> {
    let lifts = omega.tet_lifts(t);
    let mut offset = vec![0i64; t.ntets()];
    for &tet in &tree.order[1..] {
        let (face, parent) = tree.parent[tet].unwrap();
        let side = *t.faces()[face].sides.iter().find(|s| s.0 == parent && t.gluing(s.0, s.1).map(|g| g.tet) == Some(tet)).unwrap();
        offset[tet] = offset[parent] + gluing_shift(t, &lifts, side.0, side.1);
    }
    tree.generators
        .iter()
        .map(|&f| {
            let (a, fa) = t.faces()[f].sides[0];
            let b = t.faces()[f].sides[1].0;
            offset[a] + gluing_shift(t, &lifts, a, fa) - offset[b]
        })
        .collect()
}

/// The homomorphism `π₁ → ℤ^k` given by `k` classes, on the generators of
/// the triangulation's fundamental group.
pub fn abelianization_map(t: &Triangulation, p: &Presentation, classes: &[Cocycle]) -> Result<AbelianizationMap> {
    let tree = DualTree::new(t);
    let hol: Vec<Vec<i64>> = classes.iter().map(|c| holonomy(t, &tree, c)).collect();
    let images = (0..tree.generators.len()).map(|g| hol.iter().map(|h| h[g]).collect()).collect();
    AbelianizationMap::from_images(p, images)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleSpace {
    /// Lattice basis of `Z¹`.
    pub cocycles: Vec<Cocycle>,
    /// `δ` of each vertex class; they span `B¹` with one relation per component.
    pub coboundaries: Vec<Cocycle>,
    pub h1_rank: usize,
}

pub fn cocycle_space(t: &Triangulation) -> CocycleSpace {
    let d2 = face_boundary_matrix(t);
    let cocycles: Vec<Cocycle> = integer_kernel(&d2).into_iter().map(|v| Cocycle(v.iter().map(|x| x.to_i64().unwrap()).collect())).collect();
    let coboundaries: Vec<Cocycle> = (0..t.vertices().len()).map(|v| Cocycle::coboundary(t, v)).collect();
    let b_rank = if coboundaries.is_empty() { 0 } else { to_matrix(&coboundaries).rank() };
    CocycleSpace { h1_rank: cocycles.len() - b_rank, cocycles, coboundaries }
}

fn to_matrix(cs: &[Cocycle]) -> IntMatrix {
    IntMatrix::from_rows(cs[0].0.len(), &cs.iter().map(|c| c.0.clone()).collect::<Vec<_>>())
}

/// Cocycles whose classes form a basis of H¹: rows of `U·Z` for the Smith
/// form of the holonomy matrix of a `Z¹` basis `Z`.
pub fn cohomology_basis(t: &Triangulation) -> Vec<Cocycle> {
    let space = cocycle_space(t);
    if space.cocycles.is_empty() {
        return Vec::new();
    }
    let tree = DualTree::new(t);
    if tree.generators.is_empty() {
        return Vec::new();
    }
    let hol: Vec<Vec<i64>> = space.cocycles.iter().map(|c| holonomy(t, &tree, c)).collect();
    let h = IntMatrix::from_rows(tree.generators.len(), &hol);
    let snf = smith_normal_form(&h);
    let diag = snf.diagonal();
    let z = to_matrix(&space.cocycles);
    let uz = snf.u.mul(&z);
    let r = diag.iter().take_while(|d| !d.is_zero()).count();
    assert!(diag[..r].iter().all(|d| d.abs().is_one()), "holonomy lattice is saturated");
    (0..r).map(|i| Cocycle(uz.row(i).iter().map(|x| x.to_i64().unwrap()).collect())).collect()
}

/// Generator of the image of H₁ of each boundary component, in coordinates
/// dual to `basis`.
pub fn boundary_images(t: &Triangulation, basis: &[Cocycle]) -> Result<Vec<Vec<i64>>> {
    let comps = t.boundary_components();
    let mut out = Vec::new();
    for (ci, faces) in comps.iter().enumerate() {
        // graph of boundary vertices and edges on this component
        let mut edges: Vec<usize> = Vec::new();
        for &f in faces {
            let (tet, face) = t.faces()[f].sides[0];
            let vs = face_vertices(face);
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                edges.push(t.edge_of(tet, edge_slot(vs[i], vs[j])).0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let loops = cycle_values(t, &edges, basis);
        let Some(first) = loops.iter().find(|r| r.iter().any(|&x| x != 0)) else {
            return Err(Error::Invalid(format!("boundary component {ci} is trivial in H_1")));
        };
        let g = first.iter().fold(0i64, |acc, &x| gcd(acc, x));
        let mut u: Vec<i64> = first.iter().map(|x| x / g).collect();
        if u.iter().find(|&&x| x != 0).copied().unwrap_or(1) < 0 {
            u.iter_mut().for_each(|x| *x = -*x);
        }
        let k = u.iter().position(|&x| x != 0).unwrap();
        let mut mult = 0i64;
        for r in &loops {
            let c = r[k] / u[k];
            if r.iter().zip(&u).any(|(a, b)| *a != c * b) {
                return Err(Error::Invalid(format!("boundary component {ci} has image of rank 2 in H_1")));
            }
            mult = gcd(mult, c);
        }
        out.push(u.iter().map(|x| x * mult.abs()).collect());
    }
    Ok(out)
}

/// Values of the basis classes on the fundamental cycles of a subgraph.
fn cycle_values(t: &Triangulation, edges: &[usize], basis: &[Cocycle]) -> Vec<Vec<i64>> {
    let nv = t.vertices().len();
    let mut potential: Vec<Option<Vec<i64>>> = vec![None; nv];
    let mut tree_edge = vec![false; t.edges().len()];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &e in edges {
        adj[t.edges()[e].tail].push(e);
        adj[t.edges()[e].head].push(e);
    }
    for &e in edges {
        let root = t.edges()[e].tail;
        if potential[root].is_some() {
            continue;
        }
        potential[root] = Some(vec![0; basis.len()]);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &e in &adj[v] {
                let ec = &t.edges()[e];
                let (w, sign) = if ec.tail == v { (ec.head, 1) } else { (ec.tail, -1) };
                if potential[w].is_none() {
                    let pv = potential[v].clone().unwrap();
                    potential[w] = Some(pv.iter().zip(basis).map(|(p, b)| p + sign * b.0[e]).collect());
                    tree_edge[e] = true;
                    stack.push(w);
                }
            }
        }
    }
    edges
        .iter()
        .filter(|&&e| !tree_edge[e])
        .map(|&e| {
            let ec = &t.edges()[e];
            let (pt, ph) = (potential[ec.tail].as_ref().unwrap(), potential[ec.head].as_ref().unwrap());
            (0..basis.len()).map(|j| pt[j] + basis[j].0[e] - ph[j]).collect()
        })
        .collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Basis of H¹ dual to the meridians: class `i` is 1 on the generator of
/// the image of boundary torus `i` and 0 on the others.
pub fn peripheral_basis(t: &Triangulation) -> Result<Vec<Cocycle>> {
    let basis = cohomology_basis(t);
    let images = boundary_images(t, &basis)?;
    if images.len() != basis.len() {
        return Err(Error::Invalid(format!("{} boundary components but b1 = {}", images.len(), basis.len())));
    }
    let m = IntMatrix::from_rows(basis.len(), &images);
    (0..basis.len())
        .map(|i| {
            let e: Vec<BigInt> = (0..basis.len()).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
            let c = solve_integer(&m, &e).ok_or_else(|| Error::Invalid("boundary images do not form a basis of H_1".into()))?;
            let c: Vec<i64> = c.iter().map(|x| x.to_i64().unwrap()).collect();
            Ok(Cocycle::combine(t, &basis, &c))
        })
        .collect()
}

/// Peripheral basis when it exists, otherwise a cohomology basis.
pub fn standard_basis(t: &Triangulation) -> Vec<Cocycle> {
    if t.has_boundary() {
        if let Ok(b) = peripheral_basis(t) {
            return b;
        }
    }
    cohomology_basis(t)
}

/// Sum of the class over a closed edge path given as `(edge, ±1)` steps.
pub fn evaluate_path(omega: &Cocycle, path: &[(usize, i64)]) -> i64 {
    path.iter().map(|&(e, s)| s * omega.0[e]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::AbelianGroup;
    use crate::triangulation::fundamental_group;

    fn load(text: &str) -> Triangulation {
        Triangulation::parse(text).unwrap()
    }

    #[test]
    fn sphere_has_no_cocycles() {
        let t = load(include_str!("../../fixtures/s3.tri"));
        let s = cocycle_space(&t);
        assert!(s.cocycles.is_empty());
        assert!(s.coboundaries.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn ranks_match_homology() {
        for text in [
            include_str!("../../fixtures/whitehead.tri"),
            include_str!("../../fixtures/figure8.tri"),
            include_str!("../../fixtures/t25_zero.tri"),
            include_str!("../../fixtures/s2xs1.tri"),
        ] {
            let t = load(text);
            let s = cocycle_space(&t);
            assert_eq!(s.h1_rank, crate::triangulation::homology(&t).rank);
            assert_eq!(cohomology_basis(&t).len(), s.h1_rank);
            for c in &s.cocycles {
                c.check(&t).unwrap();
            }
        }
    }

    #[test]
    fn whitehead_meridian_duals() {
        let t = load(include_str!("../../fixtures/whitehead.tri"));
        let basis = peripheral_basis(&t).unwrap();
        assert_eq!(basis.len(), 2);
        let images = boundary_images(&t, &basis).unwrap();
        assert_eq!(images, vec![vec![1, 0], vec![0, 1]]);
        // the classes define a surjection onto Z^2
        let p = fundamental_group(&t);
        let phi = abelianization_map(&t, &p, &basis).unwrap();
        let cols = IntMatrix::from_rows(2, &phi.images);
        assert_eq!(crate::exactalg::abelian_invariants(&cols), AbelianGroup::new(0, &[]));
    }

    #[test]
    fn text_roundtrip() {
        let c = Cocycle(vec![1, -2, 0, 5]);
        assert_eq!(Cocycle::parse(&c.to_string()).unwrap(), c);
    }
}
