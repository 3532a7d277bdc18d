//! The manifold cut open along a dual surface, as a dual cell complex:
//! regions (slabs of tetrahedra between consecutive levels), face pieces
//! between regions, and segments of interior edges.

use std::collections::{HashMap, VecDeque};

use crate::dualsurface::DualSurface;
use crate::error::{Error, Result};
use crate::fpgroup::{Presentation, Word};
use crate::triangulation::cocycle::gluing_shift;
use crate::triangulation::complex::{face_vertices, EdgeWalk};
use crate::triangulation::Triangulation;

/// A piece of a glued face class at a value in the frame of `sides[0]`.
pub type Piece = (usize, i64);

#[derive(Clone, Debug)]
pub struct CutComplex {
    /// `(tet, value)`; value runs over the tetrahedron's lift range.
    pub regions: Vec<(usize, i64)>,
    /// Glued face pieces with the regions on their two sides.
    pub pieces: Vec<(Piece, usize, usize)>,
    /// Cycle of signed piece indices around each interior edge segment.
    pub segments: Vec<Vec<(usize, i32)>>,
    /// Vertices of the triangulation (each lies inside one region).
    pub vertices: usize,
    /// Face pieces on the boundary of the manifold.
    pub boundary_pieces: usize,
    /// Edge segments on the boundary of the manifold.
    pub boundary_segments: usize,
}

fn span(vals: impl Iterator<Item = i64>) -> (i64, i64) {
    let v: Vec<i64> = vals.collect();
    (*v.iter().min().unwrap(), *v.iter().max().unwrap())
}

pub fn cut_complex(t: &Triangulation, s: &DualSurface) -> Result<CutComplex> {
    if s.is_empty() {
        return Err(Error::Invalid("cannot cut along an empty surface".into()));
    }
    let lifts = &s.lifts;
    let mut region_index: HashMap<(usize, i64), usize> = HashMap::new();
    let mut regions = Vec::new();
    for (tet, l) in lifts.iter().enumerate() {
        let (lo, hi) = span(l.iter().copied());
        for v in lo..=hi {
            region_index.insert((tet, v), regions.len());
            regions.push((tet, v));
        }
    }
    let mut pieces = Vec::new();
    let mut piece_index: HashMap<Piece, usize> = HashMap::new();
    let mut boundary_pieces = 0;
    for (fi, fc) in t.faces().iter().enumerate() {
        let (ta, fa) = fc.sides[0];
        let (lo, hi) = span(face_vertices(fa).into_iter().map(|v| lifts[ta][v]));
        if fc.sides.len() == 1 {
            boundary_pieces += (hi - lo + 1) as usize;
            continue;
        }
        let (tb, _) = fc.sides[1];
        let shift = gluing_shift(t, lifts, ta, fa);
        for v in lo..=hi {
            piece_index.insert((fi, v), pieces.len());
            pieces.push(((fi, v), region_index[&(ta, v)], region_index[&(tb, v - shift)]));
        }
    }
    let mut segments = Vec::new();
    let mut boundary_segments = 0;
    for (ei, ec) in t.edges().iter().enumerate() {
        let emb = ec.embeddings[0];
        let (lo, hi) = span([lifts[emb.tet][emb.tail], lifts[emb.tet][emb.head]].into_iter());
        if ec.boundary {
            boundary_segments += (hi - lo + 1) as usize;
            continue;
        }
        let others: Vec<usize> = (0..4).filter(|&x| x != emb.tail && x != emb.head).collect();
        let start = EdgeWalk { tet: emb.tet, a: emb.tail, b: emb.head, c: others[0], d: others[1] };
        for v0 in lo..=hi {
            let mut cycle = Vec::new();
            let (mut cur, mut v) = (start, v0);
            loop {
                let face = t.face_of(cur.tet, cur.d);
                let forward = t.faces()[face].sides[0] == (cur.tet, cur.d);
                let shift = gluing_shift(t, lifts, cur.tet, cur.d);
                let key = if forward { v } else { v - shift };
                let p = *piece_index.get(&(face, key)).ok_or_else(|| Error::Invalid(format!("edge {ei} segment misses a face piece")))?;
                cycle.push((p, if forward { 1 } else { -1 }));
                v -= shift;
                cur = t.walk_step(cur).expect("interior edge");
                if cur == start {
                    break;
                }
            }
            if v != v0 {
                return Err(Error::Invalid(format!("class is not a cocycle around edge {ei}")));
            }
            segments.push(cycle);
        }
    }
    Ok(CutComplex { regions, pieces, segments, vertices: t.vertices().len(), boundary_pieces, boundary_segments })
}

impl CutComplex {
    /// Breadth-first spanning forest of regions; returns the tree flag per
    /// piece and the number of connected components.
    fn forest(&self) -> (Vec<bool>, usize) {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.regions.len()];
        for (i, &(_, a, b)) in self.pieces.iter().enumerate() {
            adj[a].push((i, b));
            adj[b].push((i, a));
        }
        let mut seen = vec![false; self.regions.len()];
        let mut tree = vec![false; self.pieces.len()];
        let mut components = 0;
        for root in 0..self.regions.len() {
            if seen[root] {
                continue;
            }
            components += 1;
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(r) = queue.pop_front() {
                for &(p, other) in &adj[r] {
                    if !seen[other] {
                        seen[other] = true;
                        tree[p] = true;
                        queue.push_back(other);
                    }
                }
            }
        }
        (tree, components)
    }

    /// Number of connected components of the complement.
    pub fn components(&self) -> usize {
        self.forest().1
    }

    /// Euler characteristic of the complement, counting the two copies of
    /// the surface along the cut.
    pub fn euler(&self, surface: &DualSurface) -> i64 {
        let cells = -(self.regions.len() as i64) + (self.pieces.len() + self.boundary_pieces) as i64
            - (self.segments.len() + self.boundary_segments) as i64
            + self.vertices as i64;
        cells + 2 * surface.euler()
    }

    /// π₁ of the complement (of its component containing region 0).
    pub fn complement_group(&self) -> Presentation {
        let (tree, _) = self.forest();
        let mut gen_of = vec![None; self.pieces.len()];
        let mut n = 0;
        for (i, &t) in tree.iter().enumerate() {
            if !t {
                gen_of[i] = Some(n);
                n += 1;
            }
        }
        let rels = self
            .segments
            .iter()
            .map(|cyc| Word::new(cyc.iter().filter_map(|&(p, s)| gen_of[p].map(|g| s * (g as i32 + 1)))))
            .filter(|w| !w.is_empty())
            .collect();
        Presentation::with_numbered_gens(n, rels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualsurface::build_dual_surface;
    use crate::triangulation::peripheral_basis;

    #[test]
    fn whitehead_meridian_class_cut() {
        let t = Triangulation::parse(include_str!("../../fixtures/whitehead.tri")).unwrap();
        let b = peripheral_basis(&t).unwrap();
        let w = b[0].add(&b[1]);
        let s = build_dual_surface(&t, &w).unwrap();
        let c = cut_complex(&t, &s).unwrap();
        assert_eq!(c.regions.len(), t.ntets() + s.faces);
        assert_eq!(c.euler(&s), t.euler_characteristic() + s.euler());
        let g = c.complement_group();
        assert_eq!(g.ngens(), c.pieces.len() + 1 - c.regions.len());
    }
}
