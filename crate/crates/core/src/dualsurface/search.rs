//! Random walks on triangulations by Pachner moves, carrying cohomology
//! classes along and keeping the best dual-surface bound seen.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::triangulation::canon::canonical_string;
use crate::triangulation::pachner::{pachner_23, pachner_32, valid_23_faces, valid_32_edges, MoveResult};
use crate::triangulation::{homology, Cocycle, Triangulation};

use super::{norm_upper_bound, optimize_representative, NormBound};

/// One logged move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    /// 2-3 move on a face class.
    TwoThree(usize),
    /// 3-2 move on an edge class.
    ThreeTwo(usize),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::TwoThree(x) => write!(f, "23 {x}"),
            Step::ThreeTwo(x) => write!(f, "32 {x}"),
        }
    }
}

impl Step {
    pub fn parse(text: &str) -> Result<Step> {
        let mut it = text.split_whitespace();
        let (kind, arg) = (it.next(), it.next().and_then(|x| x.parse().ok()));
        match (kind, arg) {
            (Some("23"), Some(x)) => Ok(Step::TwoThree(x)),
            (Some("32"), Some(x)) => Ok(Step::ThreeTwo(x)),
            _ => Err(Error::Invalid(format!("bad move {text:?}"))),
        }
    }

    fn apply(&self, t: &Triangulation) -> Result<MoveResult> {
        match *self {
            Step::TwoThree(f) => pachner_23(t, f),
            Step::ThreeTwo(e) => pachner_32(t, e),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Total number of moves, split evenly across workers.
    pub budget: usize,
    pub seed: u64,
    pub workers: usize,
    /// Probability of attempting a 2-3 move.
    pub p23: f64,
    /// 2-3 moves are skipped at this size; `None` means `2T + 8`.
    pub max_tets: Option<usize>,
    /// Recompute H₁ after every move and fail if it changes.
    pub check_homology: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 0, seed: 0, workers: 1, p23: 0.4, max_tets: None, check_homology: false }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: Vec<NormBound>,
    /// Best bound so far after each step, per class.
    pub progress: Vec<Vec<i64>>,
}

/// Applies `trace` to `t`, transporting `classes`.
pub fn replay_trace(t: &Triangulation, classes: &[Cocycle], trace: &[Step]) -> Result<(Triangulation, Vec<Cocycle>)> {
    let mut tri = t.clone();
    let mut cur = classes.to_vec();
    for s in trace {
        let r = s.apply(&tri)?;
        cur = cur.iter().map(|c| r.transport.apply(c)).collect();
        tri = r.triangulation;
    }
    Ok((tri, cur))
}

/// Bound, then tetrahedron count, then canonical text.
fn compare(a: &NormBound, b: &NormBound) -> Ordering {
    (a.bound, a.triangulation.ntets())
        .cmp(&(b.bound, b.triangulation.ntets()))
        .then_with(|| canonical_string(&a.triangulation).cmp(&canonical_string(&b.triangulation)))
}

struct WorkerResult {
    best: Vec<NormBound>,
    progress: Vec<Vec<i64>>,
}

fn run_worker(t: &Triangulation, classes: &[Cocycle], initial: &[NormBound], steps: usize, worker: usize, cfg: &SearchConfig) -> Result<WorkerResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(worker as u64);
    let cap = cfg.max_tets.unwrap_or(2 * t.ntets() + 8);
    let h0 = if cfg.check_homology { Some(homology(t)) } else { None };
    let mut tri = t.clone();
    let mut cur = classes.to_vec();
    let mut trace = Vec::new();
    let mut best = initial.to_vec();
    let mut progress = vec![Vec::with_capacity(steps); classes.len()];
    for _ in 0..steps {
        let faces = if tri.ntets() < cap { valid_23_faces(&tri) } else { Vec::new() };
        let edges = valid_32_edges(&tri);
        let up = !faces.is_empty() && (edges.is_empty() || rng.gen_bool(cfg.p23));
        let step = if up {
            Step::TwoThree(faces[rng.gen_range(0..faces.len())])
        } else if !edges.is_empty() {
            Step::ThreeTwo(edges[rng.gen_range(0..edges.len())])
        } else {
            break;
        };
        let r = step.apply(&tri)?;
        cur = cur.iter().map(|c| r.transport.apply(c)).collect();
        tri = r.triangulation;
        trace.push(step);
        if let Some(h) = &h0 {
            if homology(&tri) != *h {
                return Err(Error::Move(format!("homology changed after {step}")));
            }
        }
        for (i, c) in cur.iter().enumerate() {
            let (cocycle, surface) = optimize_representative(&tri, c);
            if surface.bound() <= best[i].bound {
                let cand = NormBound { bound: surface.bound(), triangulation: tri.clone(), cocycle, surface, trace: trace.clone() };
                if compare(&cand, &best[i]) == Ordering::Less {
                    best[i] = cand;
                }
            }
            progress[i].push(best[i].bound);
        }
    }
    Ok(WorkerResult { best, progress })
}

/// Deterministic in `(seed, workers, budget)`; never worse than the bounds
/// on the input triangulation.
pub fn randomized_norm_search(t: &Triangulation, classes: &[Cocycle], cfg: &SearchConfig) -> Result<SearchOutcome> {
    let initial = classes.iter().map(|c| norm_upper_bound(t, c)).collect::<Result<Vec<_>>>()?;
    let workers = cfg.workers.max(1);
    let results: Vec<WorkerResult> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let steps = cfg.budget / workers + usize::from(w < cfg.budget % workers);
            run_worker(t, classes, &initial, steps, w, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best = initial;
    for r in &results {
        for (i, cand) in r.best.iter().enumerate() {
            if compare(cand, &best[i]) == Ordering::Less {
                best[i] = cand.clone();
            }
        }
    }
    let longest = results.iter().map(|r| r.progress.first().map_or(0, Vec::len)).max().unwrap_or(0);
    let progress = (0..classes.len())
        .map(|i| {
            (0..longest)
                .map(|s| results.iter().map(|r| r.progress[i].get(s).or(r.progress[i].last()).copied().unwrap_or(best[i].bound)).min().unwrap())
                .collect()
        })
        .collect();
    Ok(SearchOutcome { best, progress })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::peripheral_basis;

    fn whitehead() -> Triangulation {
        Triangulation::parse(include_str!("../../fixtures/whitehead.tri")).unwrap()
    }

    #[test]
    fn zero_budget_keeps_initial() {
        let t = whitehead();
        let classes = peripheral_basis(&t).unwrap();
        let out = randomized_norm_search(&t, &classes, &SearchConfig::default()).unwrap();
        for (c, nb) in classes.iter().zip(&out.best) {
            assert_eq!(nb.bound, norm_upper_bound(&t, c).unwrap().bound);
            assert!(nb.trace.is_empty());
        }
    }

    #[test]
    fn deterministic_and_monotone() {
        let t = whitehead();
        let classes = peripheral_basis(&t).unwrap();
        let cfg = SearchConfig { budget: 40, seed: 7, workers: 2, ..Default::default() };
        let a = randomized_norm_search(&t, &classes, &cfg).unwrap();
        let b = randomized_norm_search(&t, &classes, &cfg).unwrap();
        for i in 0..classes.len() {
            assert_eq!(a.best[i].bound, b.best[i].bound);
            assert_eq!(a.best[i].trace, b.best[i].trace);
            assert_eq!(a.progress[i], b.progress[i]);
            assert!(a.progress[i].windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn witness_replays() {
        let t = whitehead();
        let classes = peripheral_basis(&t).unwrap();
        let cfg = SearchConfig { budget: 30, seed: 3, ..Default::default() };
        let out = randomized_norm_search(&t, &classes, &cfg).unwrap();
        for (i, nb) in out.best.iter().enumerate() {
            let (tri, cur) = replay_trace(&t, &classes, &nb.trace).unwrap();
            assert_eq!(tri.to_string(), nb.triangulation.to_string());
            assert_eq!(norm_upper_bound(&tri, &cur[i]).unwrap().bound, nb.bound);
        }
    }
}
