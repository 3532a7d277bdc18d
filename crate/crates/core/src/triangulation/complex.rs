//! Face-pairing triangulations: parsing, validation and derived skeleta.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

use super::perm::Perm4;

/// The six edges of a tetrahedron as vertex pairs, in slot order.
pub const EDGE_SLOTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

pub fn edge_slot(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    EDGE_SLOTS.iter().position(|&s| s == (lo, hi)).expect("distinct vertices")
}

/// Vertices of face `f` (the three other than `f`), increasing.
pub fn face_vertices(f: usize) -> [usize; 3] {
    let v: Vec<usize> = (0..4).filter(|&i| i != f).collect();
    [v[0], v[1], v[2]]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub face: usize,
    /// Vertex `i` of this tetrahedron goes to vertex `perm[i]` of `tet`.
    pub perm: Perm4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// Interior vertex with a 2-sphere link.
    Material,
    /// On the real boundary; the link is a disk.
    Boundary,
    /// Torus link: a cusp.
    Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub corners: Vec<(usize, usize)>,
    pub kind: VertexKind,
    pub link_euler: i64,
}

/// One occurrence of an edge class in a tetrahedron, oriented along the class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEmbedding {
    pub tet: usize,
    pub tail: usize,
    pub head: usize,
}

impl EdgeEmbedding {
    pub fn slot(&self) -> usize {
        edge_slot(self.tail, self.head)
    }

    /// `+1` when the class runs from the lower to the higher vertex number.
    pub fn sign(&self) -> i64 {
        if self.tail < self.head {
            1
        } else {
            -1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    /// In rotation order; for boundary edges from one boundary face to the other.
    pub embeddings: Vec<EdgeEmbedding>,
    pub boundary: bool,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceClass {
    /// One side for a boundary face, two for a glued face (smaller first).
    pub sides: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    adj: Vec<[Option<Gluing>; 4]>,
    edge_of: Vec<[(usize, i64); 6]>,
    vertex_of: Vec<[usize; 4]>,
    face_of: Vec<[usize; 4]>,
    edges: Vec<EdgeClass>,
    faces: Vec<FaceClass>,
    vertices: Vec<VertexClass>,
}

/// Walk state around an edge: edge `a→b` in `tet`, leaving through the face
/// opposite `d`; `c` is the remaining vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct EdgeWalk {
    pub tet: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl Triangulation {
    /// Validates an adjacency table, relabels tetrahedra to a common
    /// orientation and derives all skeleta.
    pub fn from_adjacency(adj: Vec<[Option<Gluing>; 4]>) -> Result<Self> {
        let n = adj.len();
        if n == 0 {
            return Err(Error::Triangulation("no tetrahedra".into()));
        }
        for t in 0..n {
            for f in 0..4 {
                let Some(g) = adj[t][f] else { continue };
                if g.tet >= n || g.face > 3 {
                    return Err(Error::Triangulation(format!("gluing of ({t} {f}) points outside the triangulation")));
                }
                if g.perm.apply(f) != g.face {
                    return Err(Error::Triangulation(format!("gluing of ({t} {f}) sends vertex {f} to {}, not {}", g.perm.apply(f), g.face)));
                }
                if (g.tet, g.face) == (t, f) {
                    return Err(Error::Triangulation(format!("face ({t} {f}) glued to itself")));
                }
                match adj[g.tet][g.face] {
                    Some(back) if back.tet == t && back.face == f && back.perm == g.perm.inverse() => {}
                    _ => return Err(Error::Triangulation(format!("non-involutive gluing at ({t} {f})"))),
                }
            }
        }
        let adj = orient(adj)?;
        let mut tri = Triangulation {
            adj,
            edge_of: Vec::new(),
            vertex_of: Vec::new(),
            face_of: Vec::new(),
            edges: Vec::new(),
            faces: Vec::new(),
            vertices: Vec::new(),
        };
        tri.derive_faces();
        tri.derive_vertices();
        tri.derive_edges()?;
        tri.classify_vertices()?;
        Ok(tri)
    }

    pub fn ntets(&self) -> usize {
        self.adj.len()
    }

    pub fn gluing(&self, tet: usize, face: usize) -> Option<Gluing> {
        self.adj[tet][face]
    }

    pub fn adjacency(&self) -> &[[Option<Gluing>; 4]] {
        &self.adj
    }

    pub fn edges(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn faces(&self) -> &[FaceClass] {
        &self.faces
    }

    pub fn vertices(&self) -> &[VertexClass] {
        &self.vertices
    }

    /// Edge class and sign of slot `slot` in `tet`.
    pub fn edge_of(&self, tet: usize, slot: usize) -> (usize, i64) {
        self.edge_of[tet][slot]
    }

    pub fn vertex_of(&self, tet: usize, v: usize) -> usize {
        self.vertex_of[tet][v]
    }

    pub fn face_of(&self, tet: usize, f: usize) -> usize {
        self.face_of[tet][f]
    }

    pub fn has_boundary(&self) -> bool {
        self.faces.iter().any(|f| f.sides.len() == 1)
    }

    pub fn is_closed(&self) -> bool {
        !self.has_boundary() && self.vertices.iter().all(|v| v.kind == VertexKind::Material)
    }

    pub fn is_ideal(&self) -> bool {
        self.vertices.iter().any(|v| v.kind == VertexKind::Ideal)
    }

    /// `V − E + F − T` of the cell complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64 - self.ntets() as i64
    }

    /// Boundary components as lists of boundary face classes, ordered by
    /// their smallest face.
    pub fn boundary_components(&self) -> Vec<Vec<usize>> {
        let bfaces: Vec<usize> = (0..self.faces.len()).filter(|&f| self.faces[f].sides.len() == 1).collect();
        let mut comp: Vec<Option<usize>> = vec![None; self.faces.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        // boundary faces sharing a boundary edge are adjacent
        let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); self.edges.len()];
        for &f in &bfaces {
            let (t, face) = self.faces[f].sides[0];
            let vs = face_vertices(face);
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                by_edge[self.edge_of[t][edge_slot(vs[i], vs[j])].0].push(f);
            }
        }
        for &start in &bfaces {
            if comp[start].is_some() {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = Some(id);
            let mut k = 0;
            while k < members.len() {
                let f = members[k];
                k += 1;
                let (t, face) = self.faces[f].sides[0];
                let vs = face_vertices(face);
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    for &g in &by_edge[self.edge_of[t][edge_slot(vs[i], vs[j])].0] {
                        if comp[g].is_none() {
                            comp[g] = Some(id);
                            members.push(g);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub(crate) fn walk_step(&self, w: EdgeWalk) -> Option<EdgeWalk> {
        let g = self.adj[w.tet][w.d]?;
        let p = g.perm;
        Some(EdgeWalk { tet: g.tet, a: p.apply(w.a), b: p.apply(w.b), c: p.apply(w.d), d: p.apply(w.c) })
    }

    fn derive_faces(&mut self) {
        let n = self.ntets();
        self.face_of = vec![[usize::MAX; 4]; n];
        for t in 0..n {
            for f in 0..4 {
                if self.face_of[t][f] != usize::MAX {
                    continue;
                }
                let id = self.faces.len();
                self.face_of[t][f] = id;
                let mut sides = vec![(t, f)];
                if let Some(g) = self.adj[t][f] {
                    self.face_of[g.tet][g.face] = id;
                    sides.push((g.tet, g.face));
                }
                self.faces.push(FaceClass { sides });
            }
        }
    }

    fn derive_vertices(&mut self) {
        let n = self.ntets();
        self.vertex_of = vec![[usize::MAX; 4]; n];
        for t in 0..n {
            for v in 0..4 {
                if self.vertex_of[t][v] != usize::MAX {
                    continue;
                }
                let id = self.vertices.len();
                let mut corners = vec![(t, v)];
                self.vertex_of[t][v] = id;
                let mut k = 0;
                while k < corners.len() {
                    let (s, u) = corners[k];
                    k += 1;
                    for f in (0..4).filter(|&f| f != u) {
                        if let Some(g) = self.adj[s][f] {
                            let w = g.perm.apply(u);
                            if self.vertex_of[g.tet][w] == usize::MAX {
                                self.vertex_of[g.tet][w] = id;
                                corners.push((g.tet, w));
                            }
                        }
                    }
                }
                corners.sort_unstable();
                self.vertices.push(VertexClass { corners, kind: VertexKind::Material, link_euler: 0 });
            }
        }
    }

    fn derive_edges(&mut self) -> Result<()> {
        let n = self.ntets();
        self.edge_of = vec![[(usize::MAX, 0); 6]; n];
        for t in 0..n {
            for slot in 0..6 {
                if self.edge_of[t][slot].0 != usize::MAX {
                    continue;
                }
                let (a, b) = EDGE_SLOTS[slot];
                let others: Vec<usize> = (0..4).filter(|&x| x != a && x != b).collect();
                let start = EdgeWalk { tet: t, a, b, c: others[0], d: others[1] };
                let mut forward = vec![start];
                let mut boundary = false;
                let mut cur = start;
                loop {
                    match self.walk_step(cur) {
                        None => {
                            boundary = true;
                            break;
                        }
                        Some(next) if next == start => break,
                        Some(next) => {
                            if next.tet == start.tet && edge_slot(next.a, next.b) == slot {
                                return Err(Error::Triangulation(format!("edge {a}{b} of tetrahedron {t} is identified with itself in reverse")));
                            }
                            if forward.len() > 6 * n {
                                return Err(Error::Triangulation(format!("edge walk from tetrahedron {t} does not close")));
                            }
                            forward.push(next);
                            cur = next;
                        }
                    }
                }
                let mut walk = forward;
                if boundary {
                    // walk the other way from the start, then splice
                    let mut back = Vec::new();
                    let mut cur = EdgeWalk { c: start.d, d: start.c, ..start };
                    while let Some(next) = self.walk_step(cur) {
                        back.push(EdgeWalk { c: next.d, d: next.c, ..next });
                        cur = next;
                        if back.len() > 6 * n {
                            return Err(Error::Triangulation(format!("edge walk from tetrahedron {t} does not close")));
                        }
                    }
                    back.reverse();
                    back.extend(walk);
                    walk = back;
                }
                let id = self.edges.len();
                let rep = walk.iter().min_by_key(|w| (w.tet, edge_slot(w.a, w.b))).unwrap();
                let flip = rep.a > rep.b;
                let embeddings: Vec<EdgeEmbedding> = walk
                    .iter()
                    .map(|w| if flip { EdgeEmbedding { tet: w.tet, tail: w.b, head: w.a } } else { EdgeEmbedding { tet: w.tet, tail: w.a, head: w.b } })
                    .collect();
                for e in &embeddings {
                    let s = e.slot();
                    if self.edge_of[e.tet][s].0 != usize::MAX {
                        return Err(Error::Triangulation(format!("edge slot {s} of tetrahedron {} met twice", e.tet)));
                    }
                    self.edge_of[e.tet][s] = (id, e.sign());
                }
                let first = embeddings[0];
                let (tail, head) = (self.vertex_of[first.tet][first.tail], self.vertex_of[first.tet][first.head]);
                self.edges.push(EdgeClass { embeddings, boundary, tail, head });
            }
        }
        Ok(())
    }

    fn classify_vertices(&mut self) -> Result<()> {
        let mut ends = vec![0i64; self.vertices.len()];
        for e in &self.edges {
            ends[e.tail] += 1;
            ends[e.head] += 1;
        }
        for (id, v) in self.vertices.iter_mut().enumerate() {
            let f = v.corners.len() as i64;
            let open = v
                .corners
                .iter()
                .map(|&(t, u)| (0..4).filter(|&g| g != u && self.adj[t][g].is_none()).count() as i64)
                .sum::<i64>();
            let e = (3 * f + open) / 2;
            let chi = ends[id] - e + f;
            v.link_euler = chi;
            v.kind = match (open == 0, chi) {
                (true, 2) => VertexKind::Material,
                (true, 0) => VertexKind::Ideal,
                (false, 1) => VertexKind::Boundary,
                _ => {
                    return Err(Error::Triangulation(format!(
                        "bad link at vertex class {id}: Euler characteristic {chi}{}",
                        if open > 0 { " with boundary" } else { "" }
                    )))
                }
            };
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        match lines.next() {
            Some((_, "tri v1")) => {}
            Some((n, _)) => return Err(Error::parse(n, "expected header `tri v1`")),
            None => return Err(Error::parse(0, "empty input")),
        }
        let mut adj: Option<Vec<[Option<Gluing>; 4]>> = None;
        let mut declared_boundary: Vec<(usize, usize)> = Vec::new();
        let mut ideal: Vec<(usize, usize)> = Vec::new();
        for (n, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(n, format!("bad number {s:?}")));
            match parts[0] {
                "tets" if parts.len() == 2 => {
                    if adj.is_some() {
                        return Err(Error::parse(n, "repeated `tets` line"));
                    }
                    adj = Some(vec![[None; 4]; num(parts[1])?]);
                }
                "glue" if parts.len() == 6 => {
                    let a = adj.as_mut().ok_or_else(|| Error::parse(n, "`glue` before `tets`"))?;
                    let (t, f, u, g) = (num(parts[1])?, num(parts[2])?, num(parts[3])?, num(parts[4])?);
                    let p = Perm4::parse(parts[5]).map_err(|e| Error::parse(n, e.to_string()))?;
                    if t >= a.len() || u >= a.len() || f > 3 || g > 3 {
                        return Err(Error::parse(n, "tetrahedron or face out of range"));
                    }
                    if a[t][f].is_some() || a[u][g].is_some() {
                        return Err(Error::parse(n, "non-involutive gluing: face already glued"));
                    }
                    if (t, f) == (u, g) {
                        return Err(Error::parse(n, "face glued to itself"));
                    }
                    if p.apply(f) != g {
                        return Err(Error::parse(n, format!("permutation {p} does not send face {f} to face {g}")));
                    }
                    a[t][f] = Some(Gluing { tet: u, face: g, perm: p });
                    a[u][g] = Some(Gluing { tet: t, face: f, perm: p.inverse() });
                }
                "boundary" if parts.len() == 3 => {
                    declared_boundary.push((num(parts[1])?, num(parts[2])?));
                }
                "ideal" if parts.len() == 2 => ideal.push((n, num(parts[1])?)),
                _ => return Err(Error::parse(n, format!("unrecognized line {line:?}"))),
            }
        }
        let adj = adj.ok_or_else(|| Error::parse(0, "missing `tets` line"))?;
        for t in 0..adj.len() {
            for f in 0..4 {
                let declared = declared_boundary.contains(&(t, f));
                match (adj[t][f].is_some(), declared) {
                    (false, false) => return Err(Error::Triangulation(format!("unglued face ({t} {f})"))),
                    (true, true) => return Err(Error::Triangulation(format!("face ({t} {f}) both glued and declared boundary"))),
                    _ => {}
                }
            }
        }
        let tri = Triangulation::from_adjacency(adj)?;
        for (n, v) in ideal {
            if tri.vertices.get(v).map(|c| c.kind) != Some(VertexKind::Ideal) {
                return Err(Error::parse(n, format!("vertex class {v} is not ideal")));
            }
        }
        Ok(tri)
    }
}

/// Relabels tetrahedra by the transposition (2 3) where needed so that every
/// gluing permutation is odd; fails on an orientation clash.
fn orient(adj: Vec<[Option<Gluing>; 4]>) -> Result<Vec<[Option<Gluing>; 4]>> {
    let n = adj.len();
    let mut sign: Vec<Option<bool>> = vec![None; n];
    let mut components = 0;
    for root in 0..n {
        if sign[root].is_some() {
            continue;
        }
        components += 1;
        sign[root] = Some(true);
        let mut queue = VecDeque::from([root]);
        while let Some(t) = queue.pop_front() {
            for f in 0..4 {
                let Some(g) = adj[t][f] else { continue };
                // an odd gluing keeps the orientation flag
                let want = sign[t].unwrap() == !g.perm.is_even();
                match sign[g.tet] {
                    None => {
                        sign[g.tet] = Some(want);
                        queue.push_back(g.tet);
                    }
                    Some(s) if s != want => {
                        return Err(Error::Triangulation(format!("orientation clash across face ({t} {f})")));
                    }
                    _ => {}
                }
            }
        }
    }
    if components > 1 {
        return Err(Error::Triangulation(format!("triangulation has {components} connected components")));
    }
    let sigma = |t: usize| if sign[t] == Some(true) { Perm4::IDENTITY } else { Perm4::swap(2, 3) };
    let mut out = vec![[None; 4]; n];
    for t in 0..n {
        for f in 0..4 {
            if let Some(g) = adj[t][f] {
                let (st, su) = (sigma(t), sigma(g.tet));
                out[t][st.apply(f)] = Some(Gluing { tet: g.tet, face: su.apply(g.face), perm: su.compose(g.perm).compose(st) });
            }
        }
    }
    Ok(out)
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tri v1")?;
        writeln!(f, "tets {}", self.ntets())?;
        for t in 0..self.ntets() {
            for face in 0..4 {
                match self.adj[t][face] {
                    None => writeln!(f, "boundary {t} {face}")?,
                    Some(g) if (t, face) < (g.tet, g.face) => writeln!(f, "glue {t} {face} {} {} {}", g.tet, g.face, g.perm)?,
                    Some(_) => {}
                }
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.kind == VertexKind::Ideal {
                writeln!(f, "ideal {i}")?;
            }
        }
        Ok(())
    }
}
