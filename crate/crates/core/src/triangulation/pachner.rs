//! Pachner 2-3 and 3-2 moves with transport of cocycles.
//!
//! Both moves retriangulate a bipyramid on five labeled points `P, Q, R`
//! (the equator) and `a, b` (the apexes). Old and new tetrahedra are lists of
//! labels; gluings and orientations are recomputed from the labels.

use crate::error::{Error, Result};

use super::cocycle::Cocycle;
use super::complex::{edge_slot, EdgeWalk, Gluing, Triangulation};
use super::perm::Perm4;

const P: usize = 0;
const Q: usize = 1;
const R: usize = 2;
const A: usize = 3;
const B: usize = 4;

const COORDS: [[i64; 3]; 5] = [[1, 0, 0], [0, 1, 0], [-1, -1, 0], [0, 0, 1], [0, 0, -1]];

/// Linear map sending cocycles of the old triangulation to the new one:
/// each new edge value is an integer combination of old edge values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportMap {
    pub source_edges: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl TransportMap {
    pub fn identity(n: usize) -> Self {
        TransportMap { source_edges: n, rows: (0..n).map(|i| vec![(i, 1)]).collect() }
    }

    pub fn apply(&self, c: &Cocycle) -> Cocycle {
        assert_eq!(c.0.len(), self.source_edges);
        Cocycle(self.rows.iter().map(|r| r.iter().map(|&(e, k)| k * c.0[e]).sum()).collect())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &TransportMap) -> TransportMap {
        assert_eq!(next.source_edges, self.rows.len());
        let rows = next
            .rows
            .iter()
            .map(|r| {
                let mut acc: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
                for &(mid, k) in r {
                    for &(e, j) in &self.rows[mid] {
                        *acc.entry(e).or_default() += k * j;
                    }
                }
                acc.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        TransportMap { source_edges: self.source_edges, rows }
    }
}

#[derive(Clone, Debug)]
pub struct MoveResult {
    pub triangulation: Triangulation,
    pub transport: TransportMap,
    /// Indices of the new tetrahedra (always the last ones).
    pub new_tets: Vec<usize>,
    /// Edge class created by a 2-3 move.
    pub new_edge: Option<usize>,
    /// Face class created by a 3-2 move.
    pub new_face: Option<usize>,
}

/// Face class of a tetrahedron's face given by three labels.
fn face_opposite(labels: &[usize; 4], missing: usize) -> Option<usize> {
    labels.iter().position(|&l| l == missing)
}

fn orientation(labels: &[usize; 4]) -> i64 {
    let p = |i: usize| COORDS[labels[i]];
    let d: Vec<[i64; 3]> = (1..4).map(|i| [0, 1, 2].map(|k| p(i)[k] - p(0)[k])).collect();
    let det = d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1]) - d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0])
        + d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]);
    det.signum()
}

fn labels_of_face(labels: &[usize; 4], face: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..4).filter(|&i| i != face).map(|i| labels[i]).collect();
    s.sort_unstable();
    s
}

/// Replaces the `old` tetrahedra (with vertex labels) by `new` ones.
fn rebuild(t: &Triangulation, old: &[(usize, [usize; 4])], new: &[[usize; 4]], omega_rows: bool) -> Result<MoveResult> {
    let n = t.ntets();
    let in_region: Vec<Option<usize>> = {
        let mut v = vec![None; n];
        for (k, (tet, _)) in old.iter().enumerate() {
            v[*tet] = Some(k);
        }
        v
    };
    let keep: Vec<usize> = (0..n).filter(|&x| in_region[x].is_none()).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &x) in keep.iter().enumerate() {
        index[x] = i;
    }
    let base = keep.len();
    let total = base + new.len();

    // orient new tetrahedra like the old ones
    let s = orientation(&old[0].1);
    if old.iter().any(|(_, l)| orientation(l) != s) {
        return Err(Error::Move("region tetrahedra are inconsistently oriented".into()));
    }
    let new: Vec<[usize; 4]> = new.iter().map(|l| if orientation(l) == s { *l } else { [l[0], l[1], l[3], l[2]] }).collect();

    // which (new tet, face) carries each label triple
    let new_face_of = |labels: &[usize]| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (k, l) in new.iter().enumerate() {
            for f in 0..4 {
                if labels_of_face(l, f) == labels {
                    out.push((k, f));
                }
            }
        }
        out
    };
    let count_old = |labels: &[usize]| old.iter().map(|(_, l)| (0..4).filter(|&f| labels_of_face(l, f) == labels).count()).sum::<usize>();

    let mut adj: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; total];
    for &x in &keep {
        for f in 0..4 {
            if let Some(g) = t.gluing(x, f) {
                if in_region[g.tet].is_none() {
                    adj[index[x]][f] = Some(Gluing { tet: index[g.tet], face: g.face, perm: g.perm });
                }
            }
        }
    }
    // external faces of the region: old side ↔ new side
    let mut ext: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for (k, (_, l)) in old.iter().enumerate() {
        for f in 0..4 {
            let labels = labels_of_face(l, f);
            if count_old(&labels) == 2 {
                continue;
            }
            let targets = new_face_of(&labels);
            if targets.len() != 1 {
                return Err(Error::Move("external face does not match a unique new face".into()));
            }
            ext.push(((k, f), targets[0]));
        }
    }
    let lookup_ext = |k: usize, f: usize| ext.iter().find(|(o, _)| *o == (k, f)).map(|(_, nw)| *nw);
    let label_pos = |l: &[usize; 4], label: usize| l.iter().position(|&x| x == label).unwrap();
    for &((k, f), (m, w)) in &ext {
        let (old_tet, ol) = old[k];
        let nl = new[m];
        let Some(g) = t.gluing(old_tet, f) else { continue };
        // new vertex i → label → old vertex → across gluing
        let through = |i: usize| g.perm.apply(label_pos(&ol, nl[i]));
        let (target, face, perm) = match in_region[g.tet] {
            None => {
                let mut img = [0u8; 4];
                for i in 0..4 {
                    img[i] = if i == w { g.face as u8 } else { through(i) as u8 };
                }
                (index[g.tet], g.face, Perm4::new(img)?)
            }
            Some(k2) => {
                let (m2, w2) = lookup_ext(k2, g.face).ok_or_else(|| Error::Move("region face glued to an internal face".into()))?;
                let l2 = old[k2].1;
                let mut img = [0u8; 4];
                for i in 0..4 {
                    img[i] = if i == w { w2 as u8 } else { label_pos(&new[m2], l2[through(i)]) as u8 };
                }
                (base + m2, w2, Perm4::new(img)?)
            }
        };
        adj[base + m][w] = Some(Gluing { tet: target, face, perm });
        if target < base {
            adj[target][face] = Some(Gluing { tet: base + m, face: w, perm: perm.inverse() });
        }
    }
    // internal faces among new tetrahedra
    for (m, l) in new.iter().enumerate() {
        for w in 0..4 {
            let labels = labels_of_face(l, w);
            let sides = new_face_of(&labels);
            if sides.len() != 2 {
                continue;
            }
            let (m2, w2) = if sides[0] == (m, w) { sides[1] } else { sides[0] };
            let mut img = [0u8; 4];
            for i in 0..4 {
                img[i] = if i == w { w2 as u8 } else { label_pos(&new[m2], l[i]) as u8 };
            }
            adj[base + m][w] = Some(Gluing { tet: base + m2, face: w2, perm: Perm4::new(img)? });
        }
    }
    let tri = Triangulation::from_adjacency(adj).map_err(|e| Error::Move(format!("move produced an invalid triangulation: {e}")))?;
    // from_adjacency keeps labels when every gluing is already odd
    debug_assert!(tri.adjacency().iter().flatten().flatten().all(|g| !g.perm.is_even()));

    // label lifts as combinations of old edge values
    let mut lift: Vec<Option<Vec<(usize, i64)>>> = vec![None; 5];
    let slot_form = |tet: usize, x: usize, y: usize| -> Vec<(usize, i64)> {
        // value from vertex x to vertex y of an old tetrahedron
        if x == y {
            return Vec::new();
        }
        let (e, sgn) = t.edge_of(tet, edge_slot(x, y));
        vec![(e, if x < y { sgn } else { -sgn })]
    };
    let (t0, l0) = old[0];
    let anchor = l0[0];
    lift[anchor] = Some(Vec::new());
    for i in 1..4 {
        lift[l0[i]] = Some(slot_form(t0, 0, i));
    }
    for &(tet, l) in &old[1..] {
        let known = (0..4).find(|&i| lift[l[i]].is_some()).unwrap();
        for i in 0..4 {
            if lift[l[i]].is_none() {
                let mut form = lift[l[known]].clone().unwrap();
                form.extend(slot_form(tet, known, i));
                lift[l[i]] = Some(form);
            }
        }
    }
    let mut rows = Vec::with_capacity(tri.edges().len());
    if omega_rows {
        for class in tri.edges() {
            let kept = class.embeddings.iter().find(|e| e.tet < base);
            let row = match kept {
                Some(e) => {
                    let old_tet = keep[e.tet];
                    let (oe, sgn) = t.edge_of(old_tet, edge_slot(e.tail, e.head));
                    vec![(oe, if e.tail < e.head { sgn } else { -sgn })]
                }
                None => {
                    let e = class.embeddings[0];
                    let l = new[e.tet - base];
                    let mut form: Vec<(usize, i64)> = lift[l[e.head]].clone().unwrap();
                    form.extend(lift[l[e.tail]].clone().unwrap().into_iter().map(|(x, k)| (x, -k)));
                    form
                }
            };
            rows.push(simplify_row(row));
        }
    }
    let new_tets: Vec<usize> = (base..total).collect();
    let new_edge = new_tets.iter().find_map(|&nt| {
        let l = new[nt - base];
        let (ia, ib) = (l.iter().position(|&x| x == A)?, l.iter().position(|&x| x == B)?);
        Some(tri.edge_of(nt, edge_slot(ia, ib)).0)
    });
    let new_face = if new.len() == 2 {
        let l = new[0];
        face_opposite(&l, A).or_else(|| face_opposite(&l, B)).map(|f| tri.face_of(base, f))
    } else {
        None
    };
    Ok(MoveResult {
        transport: TransportMap { source_edges: t.edges().len(), rows },
        triangulation: tri,
        new_tets,
        new_edge: if new.len() == 3 { new_edge } else { None },
        new_face,
    })
}

fn simplify_row(row: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    let mut acc: std::collections::BTreeMap<usize, i64> = std::collections::BTreeMap::new();
    for (e, k) in row {
        *acc.entry(e).or_default() += k;
    }
    acc.into_iter().filter(|&(_, k)| k != 0).collect()
}

/// Faces on which a 2-3 move is legal.
pub fn valid_23_faces(t: &Triangulation) -> Vec<usize> {
    (0..t.faces().len()).filter(|&f| check_23(t, f).is_ok()).collect()
}

/// Edges on which a 3-2 move is legal.
pub fn valid_32_edges(t: &Triangulation) -> Vec<usize> {
    (0..t.edges().len()).filter(|&e| check_32(t, e).is_ok()).collect()
}

fn check_23(t: &Triangulation, face: usize) -> Result<()> {
    let fc = t.faces().get(face).ok_or_else(|| Error::Move(format!("no face class {face}")))?;
    if fc.sides.len() != 2 {
        return Err(Error::Move(format!("face {face} lies on the boundary")));
    }
    if fc.sides[0].0 == fc.sides[1].0 {
        return Err(Error::Move(format!("face {face} joins tetrahedron {} to itself", fc.sides[0].0)));
    }
    Ok(())
}

fn check_32(t: &Triangulation, edge: usize) -> Result<()> {
    let ec = t.edges().get(edge).ok_or_else(|| Error::Move(format!("no edge class {edge}")))?;
    if ec.boundary {
        return Err(Error::Move(format!("edge {edge} lies on the boundary")));
    }
    if ec.embeddings.len() != 3 {
        return Err(Error::Move(format!("edge {edge} has valence {}, not 3", ec.embeddings.len())));
    }
    let mut tets: Vec<usize> = ec.embeddings.iter().map(|e| e.tet).collect();
    tets.sort_unstable();
    tets.dedup();
    if tets.len() != 3 {
        return Err(Error::Move(format!("edge {edge} meets a tetrahedron more than once")));
    }
    Ok(())
}

/// Two tetrahedra sharing face class `face` become three around a new edge.
pub fn pachner_23(t: &Triangulation, face: usize) -> Result<MoveResult> {
    check_23(t, face)?;
    let (ta, fa) = t.faces()[face].sides[0];
    let g = t.gluing(ta, fa).unwrap();
    let mut la = [0usize; 4];
    let mut lb = [0usize; 4];
    la[fa] = A;
    lb[g.face] = B;
    for (k, v) in (0..4).filter(|&v| v != fa).enumerate() {
        la[v] = [P, Q, R][k];
        lb[g.perm.apply(v)] = [P, Q, R][k];
    }
    let new = [[A, B, P, Q], [A, B, Q, R], [A, B, R, P]];
    rebuild(t, &[(ta, la), (g.tet, lb)], &new, true)
}

/// Three tetrahedra around a valence-3 edge become two sharing a new face.
pub fn pachner_32(t: &Triangulation, edge: usize) -> Result<MoveResult> {
    check_32(t, edge)?;
    let emb = t.edges()[edge].embeddings[0];
    let others: Vec<usize> = (0..4).filter(|&x| x != emb.tail && x != emb.head).collect();
    let start = EdgeWalk { tet: emb.tet, a: emb.tail, b: emb.head, c: others[0], d: others[1] };
    let w1 = t.walk_step(start).unwrap();
    let w2 = t.walk_step(w1).unwrap();
    let label = |w: EdgeWalk, c: usize, d: usize| {
        let mut l = [0usize; 4];
        l[w.a] = A;
        l[w.b] = B;
        l[w.c] = c;
        l[w.d] = d;
        l
    };
    // a step leaves through the face holding `c`; that vertex becomes the next `d`
    let old = [(start.tet, label(start, P, R)), (w1.tet, label(w1, Q, P)), (w2.tet, label(w2, R, Q))];
    rebuild(t, &old, &[[A, P, Q, R], [B, P, Q, R]], true)
}
