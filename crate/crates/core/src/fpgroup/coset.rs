//! Transitive permutation actions, read as coset tables of the stabilizer of
//! point 0 (printed as point 1). Generators act on the right.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

use super::presentation::Presentation;
use super::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetTable {
    perms: Vec<Vec<u32>>,
    inv: Vec<Vec<u32>>,
}

impl CosetTable {
    /// Builds a table from raw images, checking only that each is a bijection.
    pub fn from_raw(degree: usize, perms: Vec<Vec<u32>>) -> Result<Self> {
        let mut inv = Vec::with_capacity(perms.len());
        for (g, p) in perms.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::Invalid(format!("image of generator {} has length {} != {degree}", g + 1, p.len())));
            }
            let mut q = vec![u32::MAX; degree];
            for (i, &j) in p.iter().enumerate() {
                if j as usize >= degree || q[j as usize] != u32::MAX {
                    return Err(Error::Invalid(format!("image of generator {} is not a permutation", g + 1)));
                }
                q[j as usize] = i as u32;
            }
            inv.push(q);
        }
        Ok(CosetTable { perms, inv })
    }

    /// Validated table: every relator acts trivially and the action is transitive.
    pub fn from_perms(p: &Presentation, perms: Vec<Vec<u32>>) -> Result<Self> {
        if perms.len() != p.ngens() {
            return Err(Error::Invalid(format!("{} images for {} generators", perms.len(), p.ngens())));
        }
        let degree = perms.first().map_or(1, |x| x.len());
        let t = Self::from_raw(degree, perms)?;
        t.check_relators(p)?;
        let orbits = t.orbits();
        if orbits.len() > 1 {
            return Err(Error::Intransitive {
                orbits: orbits.into_iter().map(|o| o.into_iter().map(|x| x + 1).collect()).collect(),
            });
        }
        Ok(t)
    }

    /// The whole group: degree 1.
    pub fn trivial(ngens: usize) -> Self {
        CosetTable { perms: vec![vec![0]; ngens], inv: vec![vec![0]; ngens] }
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(1, |p| p.len())
    }

    pub fn ngens(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, g: usize) -> &[u32] {
        &self.perms[g]
    }

    pub fn act(&self, i: usize, letter: i32) -> usize {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.perms[g][i] as usize
        } else {
            self.inv[g][i] as usize
        }
    }

    pub fn act_word(&self, i: usize, w: &Word) -> usize {
        w.letters().iter().fold(i, |c, &l| self.act(c, l))
    }

    pub fn check_relators(&self, p: &Presentation) -> Result<()> {
        for (k, r) in p.relators().iter().enumerate() {
            if (0..self.degree()).any(|i| self.act_word(i, r) != i) {
                return Err(Error::RelatorNotSatisfied { index: k + 1, relator: r.format(p.names()) });
            }
        }
        Ok(())
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut orb = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < orb.len() {
                let c = orb[k];
                k += 1;
                for g in 0..self.ngens() {
                    for n in [self.perms[g][c] as usize, self.inv[g][c] as usize] {
                        if !seen[n] {
                            seen[n] = true;
                            orb.push(n);
                        }
                    }
                }
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    /// Breadth-first order from point 0 scanning `g1, g1⁻¹, g2, g2⁻¹, ...`,
    /// with for each newly reached point the (parent, letter) used.
    pub fn bfs(&self) -> (Vec<usize>, Vec<Option<(usize, i32)>>) {
        let d = self.degree();
        let mut order = vec![0];
        let mut parent: Vec<Option<(usize, i32)>> = vec![None; d];
        let mut seen = vec![false; d];
        seen[0] = true;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for g in 0..self.ngens() {
                for letter in [g as i32 + 1, -(g as i32 + 1)] {
                    let n = self.act(c, letter);
                    if !seen[n] {
                        seen[n] = true;
                        parent[n] = Some((c, letter));
                        order.push(n);
                    }
                }
            }
        }
        (order, parent)
    }

    /// Renumbers points in BFS order; equal subgroups give equal tables.
    pub fn standardize(&self) -> Self {
        let (order, _) = self.bfs();
        let mut label = vec![0u32; self.degree()];
        for (new, &old) in order.iter().enumerate() {
            label[old] = new as u32;
        }
        let mut perms = vec![vec![0u32; order.len()]; self.ngens()];
        for g in 0..self.ngens() {
            for &old in &order {
                perms[g][label[old] as usize] = label[self.perms[g][old] as usize];
            }
        }
        Self::from_raw(order.len(), perms).expect("relabeling preserves bijectivity")
    }

    /// Table of the intersection of the two stabilizers: the orbit of (0, 0)
    /// under the product action.
    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ngens(), other.ngens(), "tables over different presentations");
        self.product_orbit(|(i, k), letter| (self.act(i, letter), other.act(k, letter)))
    }

    /// Generic orbit of `(0, 0)` under an action on pairs.
    pub(crate) fn product_orbit(&self, step: impl Fn((usize, usize), i32) -> (usize, usize)) -> Self {
        let ng = self.ngens();
        let mut index: HashMap<(usize, usize), u32> = HashMap::new();
        let mut points = vec![(0usize, 0usize)];
        index.insert((0, 0), 0);
        let mut queue = VecDeque::from([0usize]);
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); ng];
        while let Some(c) = queue.pop_front() {
            let pt = points[c];
            for (g, img) in images.iter_mut().enumerate() {
                let n = step(pt, g as i32 + 1);
                let id = *index.entry(n).or_insert_with(|| {
                    points.push(n);
                    queue.push_back(points.len() - 1);
                    (points.len() - 1) as u32
                });
                if img.len() <= c {
                    img.resize(c + 1, 0);
                }
                img[c] = id;
            }
        }
        let d = points.len();
        for img in images.iter_mut() {
            img.resize(d, 0);
        }
        Self::from_raw(d, images).expect("orbit action is a permutation")
    }

    pub fn parse(text: &str, p: &Presentation) -> Result<Self> {
        let mut degree: Option<usize> = None;
        let mut perms: Vec<Option<Vec<u32>>> = vec![None; p.ngens()];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match kw {
                "table" => {}
                "degree" => {
                    degree = Some(rest.trim().parse().map_err(|_| Error::parse(lineno, "bad degree"))?);
                }
                "perm" => {
                    let d = degree.ok_or_else(|| Error::parse(lineno, "`perm` before `degree`"))?;
                    let (g, cycles) = rest.trim().split_once(char::is_whitespace).unwrap_or((rest.trim(), ""));
                    let gi = p
                        .names()
                        .iter()
                        .position(|n| n == g)
                        .ok_or_else(|| Error::parse(lineno, format!("unknown generator `{g}`")))?;
                    perms[gi] = Some(parse_cycles(cycles, d).map_err(|e| Error::parse(lineno, e.to_string()))?);
                }
                other => return Err(Error::parse(lineno, format!("unknown keyword `{other}`"))),
            }
        }
        let d = degree.ok_or_else(|| Error::parse(0, "missing `degree` line"))?;
        let perms = perms.into_iter().map(|x| x.unwrap_or_else(|| (0..d as u32).collect())).collect();
        Self::from_perms(p, perms)
    }

    pub fn format(&self, names: &[String]) -> String {
        let mut s = format!("table v1\ndegree {}\n", self.degree());
        for (g, p) in self.perms.iter().enumerate() {
            s.push_str(&format!("perm {} {}\n", names[g], format_cycles(p)));
        }
        s
    }
}

impl fmt::Display for CosetTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.ngens()).map(|i| format!("x{i}")).collect();
        f.write_str(&self.format(&names))
    }
}

/// Parses `(1,2,3)(4,5)` (1-based; commas or spaces) into 0-based images.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<u32>> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(Error::Invalid(format!("expected `(` in cycle notation `{text}`")));
        }
        let close = rest.find(')').ok_or_else(|| Error::Invalid("unbalanced cycle".into()))?;
        let body = &rest[1..close];
        let pts = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                let v: usize = s.parse().map_err(|_| Error::Invalid(format!("bad point `{s}`")))?;
                if v == 0 || v > degree {
                    return Err(Error::Invalid(format!("point {v} out of range 1..{degree}")));
                }
                Ok(v - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        for (k, &a) in pts.iter().enumerate() {
            if used[a] {
                return Err(Error::Invalid(format!("point {} repeated", a + 1)));
            }
            used[a] = true;
            perm[a] = pts[(k + 1) % pts.len()] as u32;
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(perm)
}

pub fn format_cycles(perm: &[u32]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] as usize == s {
            continue;
        }
        let mut cyc = Vec::new();
        let mut c = s;
        while !seen[c] {
            seen[c] = true;
            cyc.push((c + 1).to_string());
            c = perm[c] as usize;
        }
        out.push_str(&format!("({})", cyc.join(",")));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_roundtrip() {
        let p = parse_cycles("(1, 2, 3, 6, 8, 5, 7, 4)", 8).unwrap();
        assert_eq!(p[0], 1);
        assert_eq!(p[3], 0);
        assert_eq!(format_cycles(&p), "(1,2,3,6,8,5,7,4)");
        assert_eq!(format_cycles(&[0, 1]), "()");
        assert!(parse_cycles("(1,9)", 8).is_err());
    }

    #[test]
    fn relator_violation_and_orbits() {
        let p = Presentation::parse("pres v1\ngens a b\nrel b^2\n").unwrap();
        let bad = vec![vec![0, 1, 2], vec![1, 2, 0]];
        assert!(matches!(CosetTable::from_perms(&p, bad), Err(Error::RelatorNotSatisfied { index: 1, .. })));
        let split = vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]];
        match CosetTable::from_perms(&p, split) {
            Err(Error::Intransitive { orbits }) => assert_eq!(orbits, vec![vec![1, 2], vec![3, 4]]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn intersection_is_idempotent() {
        let p = Presentation::free(2);
        let t = CosetTable::from_perms(&p, vec![vec![1, 2, 0], vec![0, 2, 1]]).unwrap();
        assert_eq!(t.intersect(&t).standardize(), t.standardize());
        assert_eq!(CosetTable::trivial(2).intersect(&t).standardize(), t.standardize());
    }
}
