//! Cyclic covers dual to an integral class.

use crate::error::{Error, Result};

use super::cocycle::{gluing_shift, Cocycle};
use super::complex::{Gluing, Triangulation};

/// The `n`-fold cyclic cover for `π₁ → ℤ → ℤ/n` given by `omega`.
/// Copy `k` of tetrahedron `t` has index `k·T + t`.
#[derive(Clone, Debug)]
pub struct CyclicCover {
    pub triangulation: Triangulation,
    pub sheets: usize,
    base_tets: usize,
    lifts: Vec<[i64; 4]>,
}

pub fn cyclic_cover(t: &Triangulation, omega: &Cocycle, n: usize) -> Result<CyclicCover> {
    if n == 0 {
        return Err(Error::Invalid("cover degree must be positive".into()));
    }
    omega.check(t)?;
    let nt = t.ntets();
    let lifts = omega.tet_lifts(t);
    let mut adj: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; n * nt];
    for tet in 0..nt {
        for f in 0..4 {
            let Some(g) = t.gluing(tet, f) else { continue };
            let shift = gluing_shift(t, &lifts, tet, f).rem_euclid(n as i64) as usize;
            for k in 0..n {
                let k2 = (k + shift) % n;
                adj[k * nt + tet][f] = Some(Gluing { tet: k2 * nt + g.tet, face: g.face, perm: g.perm });
            }
        }
    }
    let tri = Triangulation::from_adjacency(adj).map_err(|e| match e {
        Error::Triangulation(m) if m.contains("connected components") => Error::Invalid(format!("class does not surject onto Z/{n}")),
        other => other,
    })?;
    Ok(CyclicCover { triangulation: tri, sheets: n, base_tets: nt, lifts })
}

impl CyclicCover {
    /// Base tetrahedron and sheet of a cover tetrahedron.
    pub fn project(&self, tet: usize) -> (usize, usize) {
        (tet % self.base_tets, tet / self.base_tets)
    }

    /// Deck transformation: sheet `k` to sheet `k + 1`.
    pub fn deck(&self, tet: usize) -> usize {
        let (t, k) = self.project(tet);
        ((k + 1) % self.sheets) * self.base_tets + t
    }

    /// Pullback of a class on the base.
    pub fn pullback(&self, base: &Triangulation, c: &Cocycle) -> Cocycle {
        let lifts = c.tet_lifts(base);
        let up: Vec<[i64; 4]> = (0..self.triangulation.ntets()).map(|x| lifts[self.project(x).0]).collect();
        Cocycle::from_tet_lifts(&self.triangulation, &up)
    }

    /// Lift of the defining class, by tetrahedron of the base.
    pub fn defining_lifts(&self) -> &[[i64; 4]] {
        &self.lifts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::AbelianGroup;
    use crate::triangulation::{canon::isomorphism, homology, peripheral_basis};

    fn whitehead() -> Triangulation {
        Triangulation::parse(include_str!("../../fixtures/whitehead.tri")).unwrap()
    }

    #[test]
    fn trivial_cover_is_a_copy() {
        let t = whitehead();
        let w = &peripheral_basis(&t).unwrap()[0];
        let c = cyclic_cover(&t, w, 1).unwrap();
        assert!(isomorphism(&t, &c.triangulation).is_some());
    }

    #[test]
    fn whitehead_covers() {
        let t = whitehead();
        let w = &peripheral_basis(&t).unwrap()[0];
        let w2 = cyclic_cover(&t, w, 2).unwrap();
        assert_eq!(homology(&w2.triangulation), AbelianGroup::new(3, &[]));
        assert_eq!(w2.triangulation.boundary_components().len(), 3);
        let w3 = cyclic_cover(&t, w, 3).unwrap();
        assert_eq!(w3.triangulation.ntets(), 3 * t.ntets());
        assert_eq!(w3.triangulation.euler_characteristic(), 3 * t.euler_characteristic());
    }

    #[test]
    fn deck_respects_gluings() {
        let t = whitehead();
        let w = &peripheral_basis(&t).unwrap()[0];
        let c = cyclic_cover(&t, w, 3).unwrap();
        let ct = &c.triangulation;
        for x in 0..ct.ntets() {
            assert_ne!(c.deck(x), x);
            for f in 0..4 {
                match (ct.gluing(x, f), ct.gluing(c.deck(x), f)) {
                    (Some(a), Some(b)) => {
                        assert_eq!(c.deck(a.tet), b.tet);
                        assert_eq!(a.perm, b.perm);
                    }
                    (None, None) => {}
                    _ => panic!("deck map breaks the boundary"),
                }
            }
        }
    }

    #[test]
    fn non_surjective_class_rejected() {
        let t = whitehead();
        let w = peripheral_basis(&t).unwrap()[0].scale(2);
        assert!(cyclic_cover(&t, &w, 2).unwrap_err().to_string().contains("surject"));
    }

    #[test]
    fn pullback_is_a_cocycle() {
        let t = whitehead();
        let basis = peripheral_basis(&t).unwrap();
        let c = cyclic_cover(&t, &basis[0], 2).unwrap();
        for b in &basis {
            c.pullback(&t, b).check(&c.triangulation).unwrap();
        }
    }
}
