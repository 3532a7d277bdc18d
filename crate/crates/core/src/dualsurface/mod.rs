//! Normal surfaces dual to integral cocycles, Thurston-norm upper bounds, and
//! randomized Pachner search for better bounds.

pub mod search;
pub mod surface;

pub use search::{randomized_norm_search, replay_trace, SearchConfig, SearchOutcome, Step};
pub use surface::{build_dual_surface, Component, Disk, DualSurface};

use crate::error::Result;
use crate::triangulation::{Cocycle, Triangulation};

/// Upper bound on the Thurston norm from one triangulation.
#[derive(Clone, Debug)]
pub struct NormBound {
    pub bound: i64,
    pub triangulation: Triangulation,
    /// Representative whose dual surface attains `bound`.
    pub cocycle: Cocycle,
    pub surface: DualSurface,
    /// Moves from the input triangulation to the witness.
    pub trace: Vec<Step>,
}

/// Ordering key: smaller bound, then fewer disks.
fn score(s: &DualSurface) -> (i64, usize) {
    (s.bound(), s.disks.len())
}

/// Best cohomologous representative found by coordinate descent over
/// vertex coboundaries. With one vertex the representative is unique.
pub fn optimize_representative(t: &Triangulation, omega: &Cocycle) -> (Cocycle, DualSurface) {
    let mut best = omega.clone();
    let mut best_surface = surface::assemble(t, &best);
    let nv = t.vertices().len();
    if nv < 2 {
        return (best, best_surface);
    }
    let deltas: Vec<Cocycle> = (0..nv).map(|v| Cocycle::coboundary(t, v)).collect();
    for _round in 0..64 {
        let mut improved = false;
        for d in &deltas {
            for sign in [1, -1] {
                loop {
                    let trial = best.add(&d.scale(sign));
                    let s = surface::assemble(t, &trial);
                    if score(&s) < score(&best_surface) {
                        best = trial;
                        best_surface = s;
                        improved = true;
                    } else {
                        break;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    (best, best_surface)
}

/// `Σ max(0, −χ)` over components of the best dual surface of `omega` on `t`.
pub fn norm_upper_bound(t: &Triangulation, omega: &Cocycle) -> Result<NormBound> {
    surface::check_input(t, omega)?;
    let (cocycle, surface) = optimize_representative(t, omega);
    Ok(NormBound { bound: surface.bound(), triangulation: t.clone(), cocycle, surface, trace: Vec::new() })
}
