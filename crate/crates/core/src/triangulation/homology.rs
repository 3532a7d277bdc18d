//! First homology and fundamental group of a triangulation.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::One;

use crate::exactalg::{abelian_invariants, AbelianGroup, IntMatrix};
use crate::fpgroup::{Presentation, Word};

use super::complex::{edge_slot, face_vertices, EdgeWalk, Triangulation};

/// Breadth-first spanning tree of the dual graph (tetrahedra joined across
/// glued faces), rooted at tetrahedron 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTree {
    /// Glued face classes not in the tree, in increasing order.
    pub generators: Vec<usize>,
    /// Generator index of each face class, if it is one.
    pub generator_of: Vec<Option<usize>>,
    /// Tree face and parent tetrahedron, by tetrahedron.
    pub parent: Vec<Option<(usize, usize)>>,
    pub order: Vec<usize>,
}

impl DualTree {
    pub fn new(t: &Triangulation) -> Self {
        let n = t.ntets();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; t.faces().len()];
        let mut order = vec![0];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for f in 0..4 {
                let Some(g) = t.gluing(s, f) else { continue };
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    in_tree[t.face_of(s, f)] = true;
                    parent[g.tet] = Some((t.face_of(s, f), s));
                    order.push(g.tet);
                    queue.push_back(g.tet);
                }
            }
        }
        let generators: Vec<usize> = (0..t.faces().len()).filter(|&f| t.faces()[f].sides.len() == 2 && !in_tree[f]).collect();
        let mut generator_of = vec![None; t.faces().len()];
        for (i, &f) in generators.iter().enumerate() {
            generator_of[f] = Some(i);
        }
        DualTree { generators, generator_of, parent, order }
    }
}

/// Word read off by walking once around an interior edge class.
fn edge_relator(t: &Triangulation, tree: &DualTree, edge: usize) -> Word {
    let emb = t.edges()[edge].embeddings[0];
    let others: Vec<usize> = (0..4).filter(|&x| x != emb.tail && x != emb.head).collect();
    let start = EdgeWalk { tet: emb.tet, a: emb.tail, b: emb.head, c: others[0], d: others[1] };
    let mut letters = Vec::new();
    let mut cur = start;
    loop {
        let face = t.face_of(cur.tet, cur.d);
        if let Some(g) = tree.generator_of[face] {
            let forward = t.faces()[face].sides[0] == (cur.tet, cur.d);
            letters.push(if forward { g as i32 + 1 } else { -(g as i32 + 1) });
        }
        cur = t.walk_step(cur).expect("interior edge");
        if cur == start {
            break;
        }
    }
    Word::new(letters)
}

/// Generators are glued faces outside the dual spanning tree; relators come
/// from walking around interior edges.
pub fn fundamental_group(t: &Triangulation) -> Presentation {
    let tree = DualTree::new(t);
    let rels = (0..t.edges().len()).filter(|&e| !t.edges()[e].boundary).map(|e| edge_relator(t, &tree, e)).collect();
    Presentation::with_numbered_gens(tree.generators.len(), rels)
}

/// `∂₂`: one row per face class, one column per edge class.
pub fn face_boundary_matrix(t: &Triangulation) -> IntMatrix {
    let mut m = IntMatrix::zeros(t.faces().len(), t.edges().len());
    for (i, fc) in t.faces().iter().enumerate() {
        let (tet, f) = fc.sides[0];
        let [a, b, c] = face_vertices(f);
        // boundary a→b→c→a
        for (x, y, s) in [(a, b, 1i64), (b, c, 1), (a, c, -1)] {
            let (e, sign) = t.edge_of(tet, edge_slot(x, y));
            let cur = m.get(i, e).clone();
            m.set(i, e, cur + BigInt::from(s * sign));
        }
    }
    m
}

/// `∂₁`: one row per edge class, `head − tail`.
pub fn edge_boundary_matrix(t: &Triangulation) -> IntMatrix {
    let mut m = IntMatrix::zeros(t.edges().len(), t.vertices().len());
    for (i, e) in t.edges().iter().enumerate() {
        if e.head != e.tail {
            m.set(i, e.head, BigInt::one());
            m.set(i, e.tail, -BigInt::one());
        }
    }
    m
}

/// H₁ of the underlying 3-manifold. Cellular chains of the triangulation when
/// every vertex is material or on the boundary; the dual complex (which
/// deletes the cusps) when some vertex is ideal.
pub fn homology(t: &Triangulation) -> AbelianGroup {
    if t.is_ideal() {
        let p = fundamental_group(t);
        return dual_homology(t, &p);
    }
    let d2 = face_boundary_matrix(t);
    let d1 = edge_boundary_matrix(t);
    let coker = abelian_invariants(&d2);
    let rank = t.edges().len() - d2.rank() - d1.rank();
    AbelianGroup { rank, torsion: coker.torsion }
}

fn dual_homology(t: &Triangulation, _p: &Presentation) -> AbelianGroup {
    // chains: tetrahedra, glued faces, interior edges
    let glued: Vec<usize> = (0..t.faces().len()).filter(|&f| t.faces()[f].sides.len() == 2).collect();
    let mut col = vec![usize::MAX; t.faces().len()];
    for (i, &f) in glued.iter().enumerate() {
        col[f] = i;
    }
    let interior: Vec<usize> = (0..t.edges().len()).filter(|&e| !t.edges()[e].boundary).collect();
    let mut d2 = IntMatrix::zeros(interior.len(), glued.len());
    for (row, &e) in interior.iter().enumerate() {
        let emb = t.edges()[e].embeddings[0];
        let others: Vec<usize> = (0..4).filter(|&x| x != emb.tail && x != emb.head).collect();
        let start = EdgeWalk { tet: emb.tet, a: emb.tail, b: emb.head, c: others[0], d: others[1] };
        let mut cur = start;
        loop {
            let face = t.face_of(cur.tet, cur.d);
            let s = if t.faces()[face].sides[0] == (cur.tet, cur.d) { 1 } else { -1 };
            let v = d2.get(row, col[face]).clone();
            d2.set(row, col[face], v + BigInt::from(s));
            cur = t.walk_step(cur).expect("interior edge");
            if cur == start {
                break;
            }
        }
    }
    let mut d1 = IntMatrix::zeros(glued.len(), t.ntets());
    for (i, &f) in glued.iter().enumerate() {
        let (a, b) = (t.faces()[f].sides[0].0, t.faces()[f].sides[1].0);
        if a != b {
            d1.set(i, b, BigInt::one());
            d1.set(i, a, -BigInt::one());
        }
    }
    let coker = abelian_invariants(&d2);
    AbelianGroup { rank: glued.len() - d2.rank() - d1.rank(), torsion: coker.torsion }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Triangulation {
        Triangulation::parse(text).unwrap()
    }

    #[test]
    fn sphere_and_s2xs1() {
        let s3 = load(include_str!("../../fixtures/s3.tri"));
        assert_eq!(homology(&s3), AbelianGroup::new(0, &[]));
        assert_eq!(fundamental_group(&s3).abelianization(), AbelianGroup::new(0, &[]));
        let s2s1 = load(include_str!("../../fixtures/s2xs1.tri"));
        assert_eq!(homology(&s2s1), AbelianGroup::new(1, &[]));
    }

    #[test]
    fn whitehead_both_models() {
        for text in [include_str!("../../fixtures/whitehead.tri"), include_str!("../../fixtures/whitehead_ideal.tri")] {
            let t = load(text);
            assert_eq!(homology(&t), AbelianGroup::new(2, &[]));
            assert_eq!(fundamental_group(&t).abelianization(), AbelianGroup::new(2, &[]));
        }
    }

    #[test]
    fn zero_surgeries_have_b1_one() {
        for text in [
            include_str!("../../fixtures/t25_zero.tri"),
            include_str!("../../fixtures/fig8_zero.tri"),
            include_str!("../../fixtures/trefoil_zero.tri"),
            include_str!("../../fixtures/figure8.tri"),
        ] {
            let t = load(text);
            assert_eq!(homology(&t), AbelianGroup::new(1, &[]));
            assert_eq!(fundamental_group(&t).abelianization(), homology(&t));
        }
    }
}
