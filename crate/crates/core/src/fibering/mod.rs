//! Fibering certificates: cut along a dual surface, present the complement's
//! fundamental group, and recognize it as the surface's own group.

pub mod cut;
pub mod whitehead;

pub use cut::{cut_complex, CutComplex};
pub use whitehead::{whitehead_cover, whitehead_report, WhiteheadCover, WhiteheadReport, WHITEHEAD_TRI};

use std::fmt;

use num_rational::BigRational;

use crate::alexander::NormBall;
use crate::dualsurface::{optimize_representative, randomized_norm_search, DualSurface, SearchConfig};
use crate::error::Result;
use crate::exactalg::polytope::q;
use crate::fpgroup::simplify::{replay, Move, SimplifyOptions};
use crate::fpgroup::surface::{classify, surface_group_certificate, SurfaceKind};
use crate::fpgroup::{cover_homology, CosetTable, Presentation};
use crate::triangulation::{Cocycle, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Fibers,
    /// Not certified; never a proof of non-fibering.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Complement group is the closed orientable surface group of the fiber.
    ClosedSurfaceGroup,
    /// Connected, nonseparating, complement group free of rank `1 − χ`.
    /// One-sided test for bounded fibers.
    FreeOfCorrectRank,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Justification::ClosedSurfaceGroup => "closed-surface-group",
            Justification::FreeOfCorrectRank => "free-of-correct-rank",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FiberCertificate {
    pub class: Cocycle,
    /// Representative and triangulation the surface was built on.
    pub triangulation: Triangulation,
    pub representative: Cocycle,
    pub euler: i64,
    pub boundary_curves: usize,
    pub verdict: Verdict,
    pub justification: Option<Justification>,
    pub reason: Option<String>,
    /// Complement presentation read off the cut complex.
    pub complement: Presentation,
    /// Result of the logged simplification.
    pub simplified: Presentation,
    pub log: Vec<Move>,
}

impl FiberCertificate {
    /// Genus of the surface when connected.
    pub fn genus(&self) -> i64 {
        (2 - self.euler - self.boundary_curves as i64) / 2
    }

    /// Replays the log and re-derives the verdict.
    pub fn replay(&self) -> Result<Verdict> {
        let p = replay(&self.complement, &self.log)?;
        if p != self.simplified {
            return Ok(Verdict::Unknown);
        }
        Ok(judge(&classify(&p), self.euler, self.boundary_curves).0)
    }

    pub fn report(&self) -> CertReport<'_> {
        CertReport(self)
    }
}

#[derive(Clone, Debug)]
pub struct FiberOptions {
    /// Pachner moves to spend looking for a better surface.
    pub search_budget: usize,
    /// Simplifier restarts for the retry pass.
    pub simplify_budget: usize,
    pub seed: u64,
}

impl Default for FiberOptions {
    fn default() -> Self {
        FiberOptions { search_budget: 0, simplify_budget: 20, seed: 0 }
    }
}

fn judge(kind: &SurfaceKind, euler: i64, boundary: usize) -> (Verdict, Option<Justification>, Option<String>) {
    match kind {
        SurfaceKind::Closed { orientable: true, genus } if boundary == 0 && 2 - 2 * *genus as i64 == euler => {
            (Verdict::Fibers, Some(Justification::ClosedSurfaceGroup), None)
        }
        SurfaceKind::Free { rank } if boundary > 0 && *rank as i64 == 1 - euler => (Verdict::Fibers, Some(Justification::FreeOfCorrectRank), None),
        SurfaceKind::Closed { orientable, genus } => {
            (Verdict::Unknown, None, Some(format!("complement group is a surface group (genus {genus}, orientable {orientable}) that does not match the surface")))
        }
        SurfaceKind::Free { rank } => (Verdict::Unknown, None, Some(format!("complement group free of rank {rank}, expected {}", 1 - euler))),
        SurfaceKind::NotCertified { reason } => (Verdict::Unknown, None, Some(format!("complement group not recognized: {reason}"))),
    }
}

/// Certifies the class using the surface on one triangulation.
pub fn certify_surface(t: &Triangulation, class: &Cocycle, representative: &Cocycle, s: &DualSurface, opts: &FiberOptions) -> Result<FiberCertificate> {
    let mut cert = FiberCertificate {
        class: class.clone(),
        triangulation: t.clone(),
        representative: representative.clone(),
        euler: s.euler(),
        boundary_curves: s.components.iter().map(|c| c.boundary_curves).sum(),
        verdict: Verdict::Unknown,
        justification: None,
        reason: None,
        complement: Presentation::free(0),
        simplified: Presentation::free(0),
        log: Vec::new(),
    };
    if s.is_empty() {
        cert.reason = Some("empty surface".into());
        return Ok(cert);
    }
    if s.components.len() != 1 {
        cert.reason = Some(format!("disconnected: {} components", s.components.len()));
        return Ok(cert);
    }
    let c = cut_complex(t, s)?;
    if c.components() != 1 {
        cert.reason = Some("separating".into());
        return Ok(cert);
    }
    let p = c.complement_group();
    cert.complement = p.clone();
    let mut sc = surface_group_certificate(&p, &SimplifyOptions { seed: opts.seed, ..Default::default() });
    let mut verdict = judge(&sc.kind, cert.euler, cert.boundary_curves);
    if verdict.0 == Verdict::Unknown && opts.simplify_budget > 0 {
        let retry = surface_group_certificate(&p, &SimplifyOptions { restarts: opts.simplify_budget, seed: opts.seed.wrapping_add(1), ..Default::default() });
        let v = judge(&retry.kind, cert.euler, cert.boundary_curves);
        if v.0 == Verdict::Fibers {
            sc = retry;
            verdict = v;
        }
    }
    cert.simplified = sc.witness;
    cert.log = sc.log;
    (cert.verdict, cert.justification, cert.reason) = verdict;
    Ok(cert)
}

/// Builds the dual surface of `class` (after an optional Pachner search for
/// a smaller one) and tries to certify that it is a fiber.
pub fn certify_fiber(t: &Triangulation, class: &Cocycle, opts: &FiberOptions) -> Result<FiberCertificate> {
    let (rep, s) = optimize_representative(t, class);
    crate::dualsurface::surface::check_input(t, class)?;
    let first = certify_surface(t, class, &rep, &s, opts)?;
    if first.verdict == Verdict::Fibers || opts.search_budget == 0 {
        return Ok(first);
    }
    let cfg = SearchConfig { budget: opts.search_budget, seed: opts.seed, ..Default::default() };
    let out = randomized_norm_search(t, std::slice::from_ref(class), &cfg)?;
    let nb = &out.best[0];
    let mut second = certify_surface(&nb.triangulation, class, &nb.cocycle, &nb.surface, opts)?;
    second.class = class.clone();
    Ok(if second.verdict == Verdict::Fibers { second } else { first })
}

/// `cert v1` text.
pub struct CertReport<'a>(&'a FiberCertificate);

impl fmt::Display for CertReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.0;
        writeln!(f, "cert v1")?;
        let vals: Vec<String> = c.class.0.iter().map(i64::to_string).collect();
        writeln!(f, "class {}", vals.join(" "))?;
        writeln!(f, "tets {}", c.triangulation.ntets())?;
        writeln!(f, "chi {}", c.euler)?;
        writeln!(f, "boundary {}", c.boundary_curves)?;
        writeln!(f, "verdict {}", if c.verdict == Verdict::Fibers { "FIBERS" } else { "UNKNOWN" })?;
        if let Some(j) = c.justification {
            writeln!(f, "justification {j}")?;
        }
        if let Some(r) = &c.reason {
            writeln!(f, "reason {r}")?;
        }
        writeln!(f, "complement {} gens {} rels", c.complement.ngens(), c.complement.relators().len())?;
        for m in &c.log {
            writeln!(f, "move {m}")?;
        }
        write!(f, "simplified\n{}", c.simplified)
    }
}

/// Propagation of a fibering verdict from a finite cover to its base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transfer {
    /// The base class whose pullback was certified fibers.
    pub class_fibers: bool,
    /// Every class of the cover is a pullback, so the manifolds fiber
    /// together.
    pub manifold_iff: bool,
    pub base_b1: usize,
    pub cover_b1: usize,
    pub reason: Option<String>,
}

/// A class fibers iff its pullback to a finite cover does; the whole
/// manifolds fiber together when their first Betti numbers agree.
pub fn stallings_transfer(cover_verdict: Verdict, base_b1: usize, cover_b1: usize) -> Transfer {
    let fibers = cover_verdict == Verdict::Fibers;
    let iff = base_b1 == cover_b1;
    Transfer {
        class_fibers: fibers,
        manifold_iff: iff,
        base_b1,
        cover_b1,
        reason: (!iff).then(|| format!("b1 differs ({base_b1} vs {cover_b1}); only the pulled-back class transfers")),
    }
}

/// First Betti numbers of a group and its finite-index subgroup, computed.
pub fn cover_betti(base: &Presentation, table: &CosetTable) -> (usize, usize) {
    (base.abelianization().rank, cover_homology(base, table).rank)
}

/// Group-level record of the chain `N ← Y → M` with `Y = N ∩ M`: a fibration
/// of `N` pulls back to `Y`, and `Y` and `M` fiber together when their Betti
/// numbers agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainTransfer {
    pub index_n: usize,
    pub index_m: usize,
    pub index_y: usize,
    /// `Y → N`: only the pullback direction.
    pub down_n: Transfer,
    /// `Y → M`.
    pub down_m: Transfer,
    /// `N` fibering forces `M` to fiber.
    pub n_implies_m: bool,
}

pub fn chain_transfer(base: &Presentation, n: &CosetTable, m: &CosetTable, n_verdict: Verdict) -> ChainTransfer {
    let y = n.intersect(m);
    let b1 = |t: &CosetTable| cover_homology(base, t).rank;
    let (bn, bm, by) = (b1(n), b1(m), b1(&y));
    let down_n = stallings_transfer(n_verdict, bn, by);
    let down_m = stallings_transfer(n_verdict, bm, by);
    let n_implies_m = down_m.manifold_iff && by > 0;
    ChainTransfer { index_n: n.degree(), index_m: m.degree(), index_y: y.degree(), down_n, down_m, n_implies_m }
}

/// Face pairs of `ball` containing certified fibered classes in their open
/// cones. Classes on a face boundary are returned separately.
pub fn face_count_ledger(ball: &NormBall, classes: &[Vec<i64>]) -> (usize, Vec<Vec<i64>>) {
    let mut faces = Vec::new();
    let mut excluded = Vec::new();
    for c in classes {
        let w: Vec<BigRational> = c.iter().map(|&x| q(x)).collect();
        match ball.face_of(&w) {
            Some(f) => faces.push(f),
            None => excluded.push(c.clone()),
        }
    }
    faces.sort_unstable();
    faces.dedup();
    let pairs = ball.antipodal_pairs();
    let count = pairs.iter().filter(|(a, b)| faces.contains(a) || faces.contains(b)).count();
    let unpaired = faces.iter().filter(|f| !pairs.iter().any(|(a, b)| a == *f || b == *f)).count();
    (count + unpaired, excluded)
}
