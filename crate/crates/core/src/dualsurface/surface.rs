//! The normal surface dual to an integral cocycle: preimage of the level
//! `m + 1/2` under the map that is affine on each tetrahedron.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::triangulation::cocycle::gluing_shift;
use crate::triangulation::complex::{edge_slot, face_vertices};
use crate::triangulation::{Cocycle, Triangulation, EDGE_SLOTS};

/// A level disk: the part of tetrahedron `tet` at height `level + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Disk {
    pub tet: usize,
    pub level: i64,
    /// Normal coordinate index: triangles 0..4 (by cut-off vertex), quads
    /// 4..7 (by the pair containing vertex 0: 01, 02, 03).
    pub kind: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub euler: i64,
    pub orientable: bool,
    pub boundary_curves: usize,
    pub disks: usize,
}

impl Component {
    /// Contribution to the norm: spheres, disks, tori and annuli count 0.
    pub fn complexity(&self) -> i64 {
        (-self.euler).max(0)
    }
}

#[derive(Clone, Debug)]
pub struct DualSurface {
    pub lifts: Vec<[i64; 4]>,
    pub disks: Vec<Disk>,
    /// Seven normal coordinates per tetrahedron.
    pub coords: Vec<[u64; 7]>,
    /// Cell counts of the assembled complex.
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub components: Vec<Component>,
    /// Component of each disk.
    pub component_of: Vec<usize>,
    shortcut: i64,
}

fn disk_kind(l: &[i64; 4], level: i64) -> u8 {
    let below: Vec<usize> = (0..4).filter(|&v| l[v] <= level).collect();
    match below.len() {
        1 => below[0] as u8,
        3 => (0..4).find(|v| !below.contains(v)).unwrap() as u8,
        2 => {
            let partner = if below.contains(&0) { below[1] } else { (1..4).find(|v| !below.contains(v)).unwrap() };
            3 + partner as u8
        }
        _ => unreachable!("level strictly inside the tetrahedron's range"),
    }
}

fn straddles(l: &[i64; 4], verts: &[usize], level: i64) -> bool {
    let lo = verts.iter().map(|&v| l[v]).min().unwrap();
    let hi = verts.iter().map(|&v| l[v]).max().unwrap();
    lo <= level && level < hi
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn add(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }
    fn find(&mut self, x: usize) -> usize {
        let mut x = x;
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Interned local cells with a union-find over them.
struct Cells {
    ids: HashMap<(usize, usize, i64), usize>,
    uf: UnionFind,
}

impl Cells {
    fn new() -> Self {
        Cells { ids: HashMap::new(), uf: UnionFind(Vec::new()) }
    }
    fn id(&mut self, key: (usize, usize, i64)) -> usize {
        if let Some(&i) = self.ids.get(&key) {
            return i;
        }
        let i = self.uf.add();
        self.ids.insert(key, i);
        i
    }
}

pub fn check_input(t: &Triangulation, omega: &Cocycle) -> Result<()> {
    omega.check(t)?;
    if t.is_ideal() {
        return Err(Error::Invalid("dual surfaces need a triangulation without ideal vertices".into()));
    }
    if t.is_closed() && t.vertices().len() != 1 {
        return Err(Error::Invalid(format!("closed triangulation has {} vertices; one is required", t.vertices().len())));
    }
    Ok(())
}

pub fn build_dual_surface(t: &Triangulation, omega: &Cocycle) -> Result<DualSurface> {
    check_input(t, omega)?;
    Ok(assemble(t, omega))
}

/// Builds without the one-vertex gate; used when optimizing representatives.
pub(crate) fn assemble(t: &Triangulation, omega: &Cocycle) -> DualSurface {
    let lifts = omega.tet_lifts(t);
    let mut disks = Vec::new();
    let mut coords = vec![[0u64; 7]; t.ntets()];
    for (tet, l) in lifts.iter().enumerate() {
        let (lo, hi) = (*l.iter().min().unwrap(), *l.iter().max().unwrap());
        for level in lo..hi {
            let kind = disk_kind(l, level);
            coords[tet][kind as usize] += 1;
            disks.push(Disk { tet, level, kind });
        }
    }
    let mut disk_index: HashMap<(usize, i64), usize> = HashMap::new();
    for (i, d) in disks.iter().enumerate() {
        disk_index.insert((d.tet, d.level), i);
    }

    // local arcs (tet, face, level) and points (tet, slot, level)
    let mut arcs = Cells::new();
    let mut points = Cells::new();
    let mut comp = UnionFind((0..disks.len()).collect());
    let mut disk_arcs: Vec<Vec<usize>> = vec![Vec::new(); disks.len()];
    let mut disk_points: Vec<Vec<usize>> = vec![Vec::new(); disks.len()];
    let mut boundary_arcs: Vec<(usize, [usize; 2])> = Vec::new();
    for (i, d) in disks.iter().enumerate() {
        let l = &lifts[d.tet];
        for (slot, &(a, b)) in EDGE_SLOTS.iter().enumerate() {
            if straddles(l, &[a, b], d.level) {
                let p = points.id((d.tet, slot, d.level));
                disk_points[i].push(p);
                for f in (0..4).filter(|&f| f != a && f != b) {
                    if let Some(g) = t.gluing(d.tet, f) {
                        let shift = gluing_shift(t, &lifts, d.tet, f);
                        let q = points.id((g.tet, edge_slot(g.perm.apply(a), g.perm.apply(b)), d.level - shift));
                        points.uf.union(p, q);
                    }
                }
            }
        }
        for f in 0..4 {
            let fv = face_vertices(f);
            if !straddles(l, &fv, d.level) {
                continue;
            }
            let a = arcs.id((d.tet, f, d.level));
            disk_arcs[i].push(a);
            match t.gluing(d.tet, f) {
                Some(g) => {
                    let shift = gluing_shift(t, &lifts, d.tet, f);
                    let b = arcs.id((g.tet, g.face, d.level - shift));
                    arcs.uf.union(a, b);
                    comp.union(i, disk_index[&(g.tet, d.level - shift)]);
                }
                None => {
                    let ends: Vec<usize> = [(0, 1), (0, 2), (1, 2)]
                        .into_iter()
                        .filter(|&(x, y)| straddles(l, &[fv[x], fv[y]], d.level))
                        .map(|(x, y)| points.id((d.tet, edge_slot(fv[x], fv[y]), d.level)))
                        .collect();
                    boundary_arcs.push((i, [ends[0], ends[1]]));
                }
            }
        }
    }

    // component labels in order of first disk
    let mut label: HashMap<usize, usize> = HashMap::new();
    let component_of: Vec<usize> = (0..disks.len())
        .map(|i| {
            let r = comp.find(i);
            let n = label.len();
            *label.entry(r).or_insert(n)
        })
        .collect();
    let nc = label.len();
    let mut v_sets: Vec<Vec<usize>> = vec![Vec::new(); nc];
    let mut e_sets: Vec<Vec<usize>> = vec![Vec::new(); nc];
    let mut f_count = vec![0usize; nc];
    for i in 0..disks.len() {
        let c = component_of[i];
        f_count[c] += 1;
        for &a in &disk_arcs[i] {
            let r = arcs.uf.find(a);
            e_sets[c].push(r);
        }
        for &p in &disk_points[i] {
            let r = points.uf.find(p);
            v_sets[c].push(r);
        }
    }
    for s in v_sets.iter_mut().chain(e_sets.iter_mut()) {
        s.sort_unstable();
        s.dedup();
    }
    // boundary circles: components of the graph of boundary arcs
    let mut circles = UnionFind(Vec::new());
    let mut circle_id: HashMap<usize, usize> = HashMap::new();
    let mut circle_comp: HashMap<usize, usize> = HashMap::new();
    for (disk, ends) in &boundary_arcs {
        let ids: Vec<usize> = ends
            .iter()
            .map(|&p| {
                let r = points.uf.find(p);
                *circle_id.entry(r).or_insert_with(|| circles.add())
            })
            .collect();
        circles.union(ids[0], ids[1]);
        circle_comp.insert(ids[0], component_of[*disk]);
    }
    let mut boundary = vec![0usize; nc];
    let mut roots: Vec<(usize, usize)> = circle_comp.iter().map(|(&id, &c)| (circles.find(id), c)).collect();
    roots.sort_unstable();
    roots.dedup();
    for (_, c) in roots {
        boundary[c] += 1;
    }

    let components: Vec<Component> = (0..nc)
        .map(|c| Component {
            euler: v_sets[c].len() as i64 - e_sets[c].len() as i64 + f_count[c] as i64,
            // two-sided in an oriented manifold
            orientable: true,
            boundary_curves: boundary[c],
            disks: f_count[c],
        })
        .collect();
    let vertices = v_sets.iter().map(Vec::len).sum();
    let edges = e_sets.iter().map(Vec::len).sum();
    let shortcut = shortcut_euler(t, omega, &lifts);
    let faces = disks.len();
    DualSurface { lifts, disks, coords, vertices, edges, faces, components, component_of, shortcut }
}

/// `Σ_e |ω(e)| − Σ_faces span + Σ_tets span`.
fn shortcut_euler(t: &Triangulation, omega: &Cocycle, lifts: &[[i64; 4]]) -> i64 {
    let span = |vals: &mut dyn Iterator<Item = i64>| {
        let v: Vec<i64> = vals.collect();
        v.iter().max().unwrap() - v.iter().min().unwrap()
    };
    let points: i64 = omega.0.iter().map(|x| x.abs()).sum();
    let arcs: i64 = t
        .faces()
        .iter()
        .map(|fc| {
            let (tet, f) = fc.sides[0];
            span(&mut face_vertices(f).into_iter().map(|v| lifts[tet][v]))
        })
        .sum();
    let disks: i64 = lifts.iter().map(|l| span(&mut l.iter().copied())).sum();
    points - arcs + disks
}

impl DualSurface {
    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    /// `V − E + F` of the assembled cell complex.
    pub fn euler(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }

    /// Euler characteristic from the edge, face and tetrahedron spans alone.
    pub fn shortcut_euler(&self) -> i64 {
        self.shortcut
    }

    /// `Σ max(0, −χ)` over components.
    pub fn bound(&self) -> i64 {
        self.components.iter().map(Component::complexity).sum()
    }

    pub fn report(&self) -> SurfaceReport<'_> {
        SurfaceReport(self)
    }
}

/// `surface v1` text.
pub struct SurfaceReport<'a>(&'a DualSurface);

impl fmt::Display for SurfaceReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0;
        writeln!(f, "surface v1")?;
        writeln!(f, "tets {}", s.coords.len())?;
        for (t, c) in s.coords.iter().enumerate() {
            if c.iter().any(|&x| x > 0) {
                let cs: Vec<String> = c.iter().map(u64::to_string).collect();
                writeln!(f, "disks {t} {}", cs.join(" "))?;
            }
        }
        writeln!(f, "cells {} {} {}", s.vertices, s.edges, s.faces)?;
        for (i, c) in s.components.iter().enumerate() {
            writeln!(
                f,
                "component {i} chi {} orientable {} boundary {} disks {}",
                c.euler,
                if c.orientable { "yes" } else { "no" },
                c.boundary_curves,
                c.disks
            )?;
        }
        writeln!(f, "bound {}", s.bound())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::peripheral_basis;

    fn whitehead() -> Triangulation {
        Triangulation::parse(include_str!("../../fixtures/whitehead.tri")).unwrap()
    }

    #[test]
    fn zero_class_is_empty() {
        let t = whitehead();
        let s = build_dual_surface(&t, &Cocycle::zero(&t)).unwrap();
        assert!(s.is_empty());
        assert!(s.components.is_empty());
        assert_eq!(s.bound(), 0);
    }

    #[test]
    fn cell_counts_match_spans() {
        let t = whitehead();
        for w in peripheral_basis(&t).unwrap() {
            let s = build_dual_surface(&t, &w).unwrap();
            assert_eq!(s.euler(), s.shortcut_euler());
            let total: i64 = s.components.iter().map(|c| c.euler).sum();
            assert_eq!(total, s.euler());
            for (tet, l) in s.lifts.iter().enumerate() {
                let span = l.iter().max().unwrap() - l.iter().min().unwrap();
                assert_eq!(s.coords[tet].iter().sum::<u64>() as i64, span);
            }
        }
    }

    #[test]
    fn doubling_doubles_cells() {
        let t = whitehead();
        let w = peripheral_basis(&t).unwrap()[0].clone();
        let a = build_dual_surface(&t, &w).unwrap();
        let b = build_dual_surface(&t, &w.scale(2)).unwrap();
        assert_eq!((b.vertices, b.edges, b.faces), (2 * a.vertices, 2 * a.edges, 2 * a.faces));
        assert_eq!(b.euler(), 2 * a.euler());
        assert_eq!(b.bound(), 2 * a.bound());
    }

    #[test]
    fn disk_kinds() {
        assert_eq!(disk_kind(&[0, 1, 1, 1], 0), 0);
        assert_eq!(disk_kind(&[0, 0, 0, 1], 0), 3);
        assert_eq!(disk_kind(&[0, 0, 1, 1], 0), 4);
        assert_eq!(disk_kind(&[0, 1, 0, 1], 0), 5);
        assert_eq!(disk_kind(&[1, 0, 0, 1], 0), 6);
    }

    #[test]
    fn ideal_input_rejected() {
        let t = Triangulation::parse(include_str!("../../fixtures/whitehead_ideal.tri")).unwrap();
        let err = build_dual_surface(&t, &Cocycle::zero(&t)).unwrap_err();
        assert!(err.to_string().contains("ideal"));
    }
}
