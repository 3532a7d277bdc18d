//! Recognizing surface groups and free groups from simplified presentations.

use super::presentation::Presentation;
use super::simplify::{simplify_presentation, Move, SimplifyOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    /// One relator, one vertex after gluing the relator polygon.
    Closed { orientable: bool, genus: usize },
    /// No relators left.
    Free { rank: usize },
    NotCertified { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceCertificate {
    pub kind: SurfaceKind,
    pub witness: Presentation,
    pub log: Vec<Move>,
}

impl SurfaceCertificate {
    pub fn is_orientable_closed(&self) -> bool {
        matches!(self.kind, SurfaceKind::Closed { orientable: true, .. })
    }
}

/// Classifies a presentation that is already in final form.
pub fn classify(p: &Presentation) -> SurfaceKind {
    let rels = p.relators();
    if rels.is_empty() {
        return SurfaceKind::Free { rank: p.ngens() };
    }
    if rels.len() > 1 {
        return SurfaceKind::NotCertified { reason: format!("{} relators remain", rels.len()) };
    }
    let r = rels[0].letters();
    let n = p.ngens();
    let mut pos = vec![Vec::new(); n];
    for (i, &l) in r.iter().enumerate() {
        pos[l.unsigned_abs() as usize - 1].push(i);
    }
    if pos.iter().any(|v| v.len() != 2) {
        return SurfaceKind::NotCertified { reason: "some generator does not appear exactly twice".into() };
    }
    // polygon vertex i sits before letter i; letter i runs tail → head
    let len = r.len();
    let ends = |i: usize| if r[i] > 0 { (i, (i + 1) % len) } else { ((i + 1) % len, i) };
    let mut parent: Vec<usize> = (0..len).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for v in &pos {
        let (t1, h1) = ends(v[0]);
        let (t2, h2) = ends(v[1]);
        for (a, b) in [(t1, t2), (h1, h2)] {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let classes = (0..len).filter(|&i| find(&mut parent, i) == i).count();
    if classes != 1 {
        return SurfaceKind::NotCertified { reason: format!("relator polygon glues to {classes} vertices") };
    }
    let orientable = pos.iter().all(|v| r[v[0]].signum() != r[v[1]].signum());
    // χ = 1 - n + 1
    let euler = 2 - n as i64;
    let genus = if orientable { ((2 - euler) / 2) as usize } else { (2 - euler) as usize };
    SurfaceKind::Closed { orientable, genus }
}

/// Simplifies, then tries to read off a closed surface or free group.
pub fn surface_group_certificate(p: &Presentation, opts: &SimplifyOptions) -> SurfaceCertificate {
    let s = simplify_presentation(p, opts);
    let kind = classify(&s.presentation);
    SurfaceCertificate { kind, witness: s.presentation, log: s.log }
}

/// Standard presentation `⟨a1,b1,…,ag,bg | [a1,b1]⋯[ag,bg]⟩`.
pub fn standard_surface(genus: usize) -> Presentation {
    let mut letters = Vec::new();
    for i in 0..genus {
        let (a, b) = (2 * i as i32 + 1, 2 * i as i32 + 2);
        letters.extend([a, b, -a, -b]);
    }
    Presentation::with_numbered_gens(2 * genus, vec![super::word::Word::new(letters)])
}
