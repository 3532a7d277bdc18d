//! Tietze and Nielsen simplification with a replayable move log.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::presentation::Presentation;
use super::word::Word;

/// A single isomorphism-preserving rewrite of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Relators replaced by canonical cyclic representatives, sorted,
    /// deduplicated; trivial ones dropped.
    Normalize,
    /// Relator `rel` contains generator `gen` exactly once; solve for it,
    /// substitute everywhere, delete both.
    Eliminate { gen: usize, rel: usize },
    /// `target ← rotate(target, rot_t) · rotate(source^±1, rot_s)`, reduced.
    Combine { target: usize, rot_t: usize, source: usize, rot_s: usize, invert: bool },
    /// New generator `x' = x·y^sign` replaces `x`.
    Nielsen { x: usize, y: usize, sign: i32 },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Normalize => write!(f, "normalize"),
            Move::Eliminate { gen, rel } => write!(f, "eliminate {gen} {rel}"),
            Move::Combine { target, rot_t, source, rot_s, invert } => {
                write!(f, "combine {target} {rot_t} {source} {rot_s} {}", u8::from(*invert))
            }
            Move::Nielsen { x, y, sign } => write!(f, "nielsen {x} {y} {sign}"),
        }
    }
}

impl Move {
    pub fn parse(line: &str) -> Result<Move> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            parts.get(i).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Invalid(format!("bad move `{line}`")))
        };
        match parts.first().copied() {
            Some("normalize") => Ok(Move::Normalize),
            Some("eliminate") => Ok(Move::Eliminate { gen: num(1)?, rel: num(2)? }),
            Some("combine") => Ok(Move::Combine {
                target: num(1)?,
                rot_t: num(2)?,
                source: num(3)?,
                rot_s: num(4)?,
                invert: num(5)? == 1,
            }),
            Some("nielsen") => {
                let sign: i32 =
                    parts.get(3).and_then(|s| s.parse().ok()).ok_or_else(|| Error::Invalid(format!("bad move `{line}`")))?;
                Ok(Move::Nielsen { x: num(1)?, y: num(2)?, sign })
            }
            _ => Err(Error::Invalid(format!("unknown move `{line}`"))),
        }
    }
}

pub fn apply_move(p: &Presentation, m: &Move) -> Result<Presentation> {
    let names = p.names().to_vec();
    let rels = p.relators();
    let bad = || Error::Invalid(format!("move `{m}` does not apply"));
    match *m {
        Move::Normalize => {
            let mut rs: Vec<Word> = rels.iter().map(|r| r.cyclic_canonical()).filter(|r| !r.is_empty()).collect();
            rs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            rs.dedup();
            Ok(Presentation::new(names, rs))
        }
        Move::Eliminate { gen, rel } => {
            let r = rels.get(rel).ok_or_else(bad)?;
            if gen >= names.len() || r.occurrences(gen) != 1 {
                return Err(bad());
            }
            let pos = r.letters().iter().position(|l| l.unsigned_abs() as usize == gen + 1).unwrap();
            let rot = r.rotate(pos);
            let rest = Word::new(rot.letters()[1..].iter().copied());
            // x·w = 1 gives x = w⁻¹; x⁻¹·w = 1 gives x = w
            let image = if rot.letters()[0] > 0 { rest.inverse() } else { rest };
            let mut new_rels = Vec::with_capacity(rels.len() - 1);
            for (k, other) in rels.iter().enumerate() {
                if k != rel {
                    new_rels.push(other.substitute(gen, &image).map_gens(|g| if g > gen { g - 1 } else { g }));
                }
            }
            let mut new_names = names;
            new_names.remove(gen);
            Ok(Presentation::new(new_names, new_rels))
        }
        Move::Combine { target, rot_t, source, rot_s, invert } => {
            if target == source || target >= rels.len() || source >= rels.len() {
                return Err(bad());
            }
            let s = if invert { rels[source].inverse() } else { rels[source].clone() };
            let w = rels[target].rotate(rot_t).concat(&s.rotate(rot_s));
            let mut new_rels = rels.to_vec();
            new_rels[target] = w;
            Ok(Presentation::new(names, new_rels))
        }
        Move::Nielsen { x, y, sign } => {
            if x == y || x >= names.len() || y >= names.len() || sign.abs() != 1 {
                return Err(bad());
            }
            // old x = x'·y^{-sign}
            let image = Word::gen(x).concat(&Word::gen(y).pow(-sign as i64));
            let new_rels = rels.iter().map(|r| r.substitute(x, &image)).collect();
            Ok(Presentation::new(names, new_rels))
        }
    }
}

pub fn replay(p: &Presentation, log: &[Move]) -> Result<Presentation> {
    log.iter().try_fold(p.clone(), |acc, m| apply_move(&acc, m))
}

#[derive(Clone, Debug)]
pub struct SimplifyOptions {
    /// Eliminations stop once total relator length would exceed this.
    pub length_cap: usize,
    /// Run the greedy Nielsen pass.
    pub nielsen: bool,
    /// Random restarts (each perturbs by a few Nielsen moves, then re-runs
    /// the greedy passes); the best result wins.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SimplifyOptions {
    fn default() -> Self {
        SimplifyOptions { length_cap: 20_000, nielsen: true, restarts: 0, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: Presentation,
    pub log: Vec<Move>,
}

struct Run {
    current: Presentation,
    log: Vec<Move>,
}

impl Run {
    fn apply(&mut self, m: Move) {
        self.current = apply_move(&self.current, &m).expect("simplifier only emits applicable moves");
        self.log.push(m);
    }
}

/// Measure used to compare results: fewer generators, then shorter.
fn size(p: &Presentation) -> (usize, usize, usize) {
    (p.ngens(), p.total_length(), p.relators().len())
}

pub fn simplify_presentation(p: &Presentation, opts: &SimplifyOptions) -> Simplified {
    let mut run = Run { current: p.clone(), log: Vec::new() };
    greedy(&mut run, opts);
    let mut best = Simplified { presentation: run.current.clone(), log: run.log.clone() };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.restarts {
        let mut trial = Run { current: best.presentation.clone(), log: best.log.clone() };
        let n = trial.current.ngens();
        if n < 2 {
            break;
        }
        for _ in 0..rng.gen_range(1..=3) {
            let mut pair: Vec<usize> = (0..n).collect();
            pair.shuffle(&mut rng);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            trial.apply(Move::Nielsen { x: pair[0], y: pair[1], sign });
        }
        greedy(&mut trial, opts);
        if size(&trial.current) < size(&best.presentation) {
            best = Simplified { presentation: trial.current, log: trial.log };
        }
    }
    best
}

fn greedy(run: &mut Run, opts: &SimplifyOptions) {
    loop {
        let before = size(&run.current);
        run.apply(Move::Normalize);
        eliminate_pass(run, opts.length_cap);
        combine_pass(run);
        if opts.nielsen {
            nielsen_pass(run);
        }
        run.apply(Move::Normalize);
        if size(&run.current) >= before {
            break;
        }
    }
}

fn eliminate_pass(run: &mut Run, cap: usize) {
    loop {
        let p = &run.current;
        let ng = p.ngens();
        let mut occ = vec![0usize; ng];
        for r in p.relators() {
            for &l in r.letters() {
                occ[l.unsigned_abs() as usize - 1] += 1;
            }
        }
        let total = p.total_length();
        // (estimated new total, rel, gen)
        let mut best: Option<(usize, usize, usize)> = None;
        for (k, r) in p.relators().iter().enumerate() {
            let mut local = vec![0usize; ng];
            for &l in r.letters() {
                local[l.unsigned_abs() as usize - 1] += 1;
            }
            for g in 0..ng {
                if local[g] != 1 {
                    continue;
                }
                let elsewhere = occ[g] - 1;
                let est = (total + elsewhere * (r.len() - 1)).saturating_sub(r.len() + elsewhere);
                let cand = (est, k, g);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        match best {
            Some((est, rel, gen)) if est <= cap.max(total) => run.apply(Move::Eliminate { gen, rel }),
            _ => break,
        }
    }
}

/// Finds a cyclic subword shared by `t` and `s^±1` longer than half of `s`,
/// returned as the `Combine` parameters that cancel it.
fn find_overlap(t: &Word, s: &Word) -> Option<(usize, usize, bool)> {
    let (tl, sl) = (t.len(), s.len());
    if sl == 0 || sl > tl {
        return None;
    }
    let k = sl / 2 + 1;
    let mut windows: HashMap<&[i32], (bool, usize)> = HashMap::new();
    let sd: Vec<i32> = s.letters().iter().chain(s.letters()).copied().collect();
    let si = s.inverse();
    let sid: Vec<i32> = si.letters().iter().chain(si.letters()).copied().collect();
    // (word is s⁻¹, start)
    let mut owned: Vec<(Vec<i32>, bool, usize)> = Vec::new();
    for q in 0..sl {
        owned.push((sd[q..q + k].to_vec(), false, q));
        owned.push((sid[q..q + k].to_vec(), true, q));
    }
    for (w, inv, q) in &owned {
        windows.entry(w.as_slice()).or_insert((*inv, *q));
    }
    let td: Vec<i32> = t.letters().iter().chain(t.letters()).copied().collect();
    for p in 0..tl {
        if let Some(&(x_is_inverse, q)) = windows.get(&td[p..p + k]) {
            // t rotated to end with the window; multiply by x⁻¹ rotated to
            // start with the window's inverse
            let rot_t = (p + k) % tl;
            let rot_s = (sl - (q + k) % sl) % sl;
            return Some((rot_t, rot_s, !x_is_inverse));
        }
    }
    None
}

fn combine_pass(run: &mut Run) {
    'restart: loop {
        let count = run.current.relators().len();
        for ti in 0..count {
            for si in 0..count {
                if si == ti {
                    continue;
                }
                let rels = run.current.relators();
                if let Some((rot_t, rot_s, invert)) = find_overlap(&rels[ti], &rels[si]) {
                    run.apply(Move::Combine { target: ti, rot_t, source: si, rot_s, invert });
                    if run.current.relators().len() != count {
                        continue 'restart;
                    }
                }
            }
        }
        break;
    }
}

fn nielsen_pass(run: &mut Run) {
    let mut improved = true;
    while improved {
        improved = false;
        let n = run.current.ngens();
        let len = run.current.total_length();
        'scan: for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                for sign in [1, -1] {
                    let m = Move::Nielsen { x, y, sign };
                    let cand = apply_move(&run.current, &m).unwrap();
                    if cand.total_length() < len {
                        run.apply(m);
                        improved = true;
                        break 'scan;
                    }
                }
            }
        }
    }
}

/// Scrambles a presentation with random moves that preserve the group;
/// used by tests and round-trip checks.
pub fn scramble(p: &Presentation, steps: usize, seed: u64) -> Simplified {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = Run { current: p.clone(), log: Vec::new() };
    for _ in 0..steps {
        let n = run.current.ngens();
        let nr = run.current.relators().len();
        if n >= 2 && (nr < 2 || rng.gen_bool(0.5)) {
            let x = rng.gen_range(0..n);
            let mut y = rng.gen_range(0..n - 1);
            if y >= x {
                y += 1;
            }
            run.apply(Move::Nielsen { x, y, sign: if rng.gen_bool(0.5) { 1 } else { -1 } });
        } else if nr >= 2 {
            let target = rng.gen_range(0..nr);
            let mut source = rng.gen_range(0..nr - 1);
            if source >= target {
                source += 1;
            }
            let rot_t = rng.gen_range(0..run.current.relators()[target].len().max(1));
            let rot_s = rng.gen_range(0..run.current.relators()[source].len().max(1));
            run.apply(Move::Combine { target, rot_t, source, rot_s, invert: rng.gen_bool(0.5) });
        }
    }
    Simplified { presentation: run.current, log: run.log }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dead_generator_eliminated() {
        let p = Presentation::parse("pres v1\ngens a b\nrel a\n").unwrap();
        let s = simplify_presentation(&p, &SimplifyOptions::default());
        assert_eq!(s.presentation.ngens(), 1);
        assert!(s.presentation.relators().is_empty());
        assert_eq!(replay(&p, &s.log).unwrap(), s.presentation);
    }

    #[test]
    fn scramble_then_simplify_genus_two() {
        let p = Presentation::parse("pres v1\ngens a b c d\nrel abABcdCD\n").unwrap();
        let scr = scramble(&p, 6, 11);
        assert_eq!(replay(&p, &scr.log).unwrap(), scr.presentation);
        let s = simplify_presentation(&scr.presentation, &SimplifyOptions { restarts: 20, ..Default::default() });
        assert_eq!(replay(&scr.presentation, &s.log).unwrap(), s.presentation);
        assert_eq!(s.presentation.ngens(), 4);
        assert_eq!(s.presentation.total_length(), 8);
    }

    #[test]
    fn move_text_roundtrip() {
        for m in [
            Move::Normalize,
            Move::Eliminate { gen: 2, rel: 0 },
            Move::Combine { target: 1, rot_t: 3, source: 0, rot_s: 2, invert: true },
            Move::Nielsen { x: 0, y: 1, sign: -1 },
        ] {
            assert_eq!(Move::parse(&m.to_string()).unwrap(), m);
        }
    }
}
