//! Combinatorial isomorphism and a canonical serialization.

use std::collections::VecDeque;

use super::cocycle::Cocycle;
use super::complex::{edge_slot, Triangulation};
use super::perm::Perm4;

/// Tetrahedron `i` of the source goes to `tet[i]`, vertex `v` to `perm[i][v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub tet: Vec<usize>,
    pub perm: Vec<Perm4>,
}

/// Breadth-first relabeling from a start tetrahedron and vertex map; returns
/// the code and the labeling (new index and vertex map per old tetrahedron).
fn relabel(t: &Triangulation, start: usize, p: Perm4) -> (Vec<u32>, Vec<usize>, Vec<Perm4>) {
    let n = t.ntets();
    let mut index = vec![usize::MAX; n];
    let mut map = vec![Perm4::IDENTITY; n];
    let mut order = Vec::with_capacity(n);
    index[start] = 0;
    map[start] = p;
    order.push(start);
    let mut queue = VecDeque::from([start]);
    let mut code = Vec::with_capacity(8 * n);
    while let Some(s) = queue.pop_front() {
        let inv = map[s].inverse();
        for new_face in 0..4 {
            let f = inv.apply(new_face);
            match t.gluing(s, f) {
                None => {
                    code.push(u32::MAX);
                    code.push(0);
                }
                Some(g) => {
                    if index[g.tet] == usize::MAX {
                        index[g.tet] = order.len();
                        // make the gluing read as the identity on shared vertices
                        map[g.tet] = map[s].compose(g.perm.inverse());
                        order.push(g.tet);
                        queue.push_back(g.tet);
                    }
                    let q = map[g.tet].compose(g.perm).compose(inv);
                    code.push(index[g.tet] as u32);
                    code.push(q.index() as u32);
                }
            }
        }
    }
    (code, index, map)
}

/// Lexicographically least relabeling code over all starting points.
pub fn canonical_code(t: &Triangulation) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for s in 0..t.ntets() {
        for p in Perm4::all() {
            let (code, _, _) = relabel(t, s, p);
            if best.as_ref().map_or(true, |b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.unwrap_or_default()
}

/// Canonical code as a compact string.
pub fn canonical_string(t: &Triangulation) -> String {
    canonical_code(t)
        .chunks(2)
        .map(|c| if c[0] == u32::MAX { "b".to_string() } else { format!("{}.{}", c[0], c[1]) })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn isomorphism(a: &Triangulation, b: &Triangulation) -> Option<Isomorphism> {
    if a.ntets() != b.ntets() {
        return None;
    }
    let (code_a, idx_a, map_a) = relabel(a, 0, Perm4::IDENTITY);
    for s in 0..b.ntets() {
        for p in Perm4::all() {
            let (code_b, idx_b, map_b) = relabel(b, s, p);
            if code_b != code_a {
                continue;
            }
            let mut by_index = vec![0; b.ntets()];
            for (tb, &i) in idx_b.iter().enumerate() {
                by_index[i] = tb;
            }
            let tet: Vec<usize> = idx_a.iter().map(|&i| by_index[i]).collect();
            let perm = (0..a.ntets()).map(|ta| map_b[tet[ta]].inverse().compose(map_a[ta])).collect();
            return Some(Isomorphism { tet, perm });
        }
    }
    None
}

impl Isomorphism {
    /// Pushes a cocycle on the source forward to the target.
    pub fn push_cocycle(&self, source: &Triangulation, target: &Triangulation, omega: &Cocycle) -> Cocycle {
        let mut out = vec![0i64; target.edges().len()];
        for (e, class) in source.edges().iter().enumerate() {
            let emb = class.embeddings[0];
            let (tt, p) = (self.tet[emb.tet], self.perm[emb.tet]);
            let (tail, head) = (p.apply(emb.tail), p.apply(emb.head));
            let (te, sign) = target.edge_of(tt, edge_slot(tail, head));
            let along = if tail < head { sign } else { -sign };
            out[te] = along * omega.0[e];
        }
        Cocycle(out)
    }
}
