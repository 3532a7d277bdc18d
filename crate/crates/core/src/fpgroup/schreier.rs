//! Reidemeister–Schreier presentations of finite-index subgroups.

use num_bigint::BigInt;

use crate::exactalg::{abelian_invariants, AbelianGroup, IntMatrix};

use super::coset::CosetTable;
use super::presentation::Presentation;
use super::word::Word;

/// The subgroup presentation plus the bookkeeping needed to rewrite words
/// and induce actions back to the parent group.
#[derive(Clone, Debug)]
pub struct Schreier {
    pub presentation: Presentation,
    /// `symbol[c][g]`: Schreier generator for coset `c` and generator `g`,
    /// `None` on spanning-tree edges.
    pub symbol: Vec<Vec<Option<usize>>>,
    /// Transversal word reaching each coset from coset 0.
    pub transversal: Vec<Word>,
    table: CosetTable,
}

pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable) -> Schreier {
    let d = t.degree();
    let ng = p.ngens();
    let (order, parent) = t.bfs();
    let mut tree = vec![vec![false; ng]; d];
    let mut transversal = vec![Word::empty(); d];
    for &c in &order[1..] {
        let (from, letter) = parent[c].unwrap();
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            tree[from][g] = true;
        } else {
            tree[c][g] = true;
        }
        transversal[c] = transversal[from].concat(&Word::new([letter]));
    }
    let mut symbol = vec![vec![None; ng]; d];
    let mut count = 0;
    for (c, row) in symbol.iter_mut().enumerate() {
        for (g, s) in row.iter_mut().enumerate() {
            if !tree[c][g] {
                *s = Some(count);
                count += 1;
            }
        }
    }
    let mut rels = Vec::with_capacity(d * p.relators().len());
    let mut sch = Schreier { presentation: Presentation::with_numbered_gens(count, Vec::new()), symbol, transversal, table: t.clone() };
    for c in 0..d {
        for r in p.relators() {
            let (w, end) = sch.rewrite(c, r);
            debug_assert_eq!(end, c, "relator must fix every coset");
            rels.push(w);
        }
    }
    sch.presentation = Presentation::with_numbered_gens(count, rels);
    sch
}

impl Schreier {
    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    /// Rewrites `w` read from coset `start`; returns the Schreier word and
    /// the final coset.
    pub fn rewrite(&self, start: usize, w: &Word) -> (Word, usize) {
        let mut c = start;
        let mut out = Vec::new();
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 {
                if let Some(s) = self.symbol[c][g] {
                    out.push(s as i32 + 1);
                }
                c = self.table.act(c, l);
            } else {
                c = self.table.act(c, l);
                if let Some(s) = self.symbol[c][g] {
                    out.push(-(s as i32 + 1));
                }
            }
        }
        (Word::new(out), c)
    }

    /// Lifts a table of a subgroup `K` of this subgroup (given on the
    /// Schreier generators) to a table of `K` in the parent group.
    pub fn induce(&self, sub: &CosetTable) -> CosetTable {
        let t = &self.table;
        let step = |(i, k): (usize, usize), letter: i32| {
            let g = letter as usize - 1;
            let k2 = match self.symbol[i][g] {
                Some(s) => sub.act(k, s as i32 + 1),
                None => k,
            };
            (t.act(i, letter), k2)
        };
        t.product_orbit(step)
    }
}

/// First homology of the covering 2-complex, computed from the cellular
/// chain complex without a spanning tree.
pub fn cover_homology(p: &Presentation, t: &CosetTable) -> AbelianGroup {
    let d = t.degree();
    let ng = p.ngens();
    let edge = |c: usize, g: usize| c * ng + g;
    let mut d1 = IntMatrix::zeros(d * ng, d);
    for c in 0..d {
        for g in 0..ng {
            let e = edge(c, g);
            let h = t.act(c, g as i32 + 1);
            if h != c {
                d1.set(e, c, BigInt::from(-1));
                d1.set(e, h, BigInt::from(1));
            }
        }
    }
    let nr = p.relators().len();
    let mut d2 = IntMatrix::zeros(d * nr, d * ng);
    for c in 0..d {
        for (k, r) in p.relators().iter().enumerate() {
            let row = c * nr + k;
            let mut cur = c;
            for &l in r.letters() {
                let g = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    let e = edge(cur, g);
                    let v = d2.get(row, e) + 1;
                    d2.set(row, e, v);
                    cur = t.act(cur, l);
                } else {
                    cur = t.act(cur, l);
                    let e = edge(cur, g);
                    let v = d2.get(row, e) - 1;
                    d2.set(row, e, v);
                }
            }
        }
    }
    let r1 = d1.rank();
    let coker = abelian_invariants(&d2);
    let r2 = d * ng - coker.rank;
    AbelianGroup { rank: d * ng - r1 - r2, torsion: coker.torsion }
}
