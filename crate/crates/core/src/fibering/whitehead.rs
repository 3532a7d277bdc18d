//! Cyclic covers of the Whitehead link exterior: norm ball, fibered sign
//! classes and vertex-class norm bounds.

use std::fmt;

use num_traits::Signed;

use crate::alexander::{alexander_ball, alexander_polynomial_with, AlexanderData, NormBall};
use crate::dualsurface::{randomized_norm_search, SearchConfig};
use crate::error::{Error, Result};
use crate::triangulation::cocycle::abelianization_map;
use crate::triangulation::{cohomology_basis, cyclic_cover, fundamental_group, peripheral_basis, Cocycle, CyclicCover, Triangulation};

use super::{certify_fiber, face_count_ledger, FiberCertificate, FiberOptions, Verdict};

/// Fixture triangulation of the link exterior with real boundary.
pub const WHITEHEAD_TRI: &str = include_str!("../../fixtures/whitehead.tri");

pub struct WhiteheadCover {
    pub n: usize,
    pub cover: CyclicCover,
    /// Integral basis of `H¹(W_n)` the ball is drawn in.
    pub basis: Vec<Cocycle>,
    pub alexander: AlexanderData,
    pub ball: NormBall,
    /// Ball vertices in basis coordinates.
    pub vertex_classes: Vec<Vec<i64>>,
}

/// `n`-fold cyclic cover dual to the first peripheral class of `base`.
pub fn whitehead_cover(base: &Triangulation, n: usize) -> Result<WhiteheadCover> {
    let periph = peripheral_basis(base)?;
    let cover = cyclic_cover(base, &periph[0], n)?;
    let w = &cover.triangulation;
    let basis = cohomology_basis(w);
    let group = fundamental_group(w);
    let phi = abelianization_map(w, &group, &basis)?;
    let alexander = alexander_polynomial_with(&group, phi)?;
    let ball = alexander_ball(&alexander.delta)?;
    let vertex_classes = ball
        .vertices
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    if !x.is_integer() {
                        return Err(Error::Invalid(format!("ball vertex coordinate {x} is not integral")));
                    }
                    i64::try_from(x.to_integer()).map_err(|_| Error::Invalid("ball vertex out of range".into()))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(WhiteheadCover { n, cover, basis, alexander, ball, vertex_classes })
}

impl WhiteheadCover {
    pub fn triangulation(&self) -> &Triangulation {
        &self.cover.triangulation
    }

    pub fn class(&self, coeffs: &[i64]) -> Cocycle {
        Cocycle::combine(self.triangulation(), &self.basis, coeffs)
    }

    /// One vertex from each antipodal pair, first nonzero coordinate
    /// positive, in increasing order: the classes `ω_0, …, ω_n`.
    pub fn vertex_basis(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.vertex_classes.iter().filter(|v| v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)).cloned().collect();
        out.sort();
        out
    }

    /// `Σ ε_i ω_i` as a class.
    pub fn omega_class(&self, eps: &[i64]) -> Cocycle {
        let mut c = vec![0; self.basis.len()];
        for (w, e) in self.vertex_basis().iter().zip(eps) {
            for (a, x) in c.iter_mut().zip(w) {
                *a += e * x;
            }
        }
        self.class(&c)
    }

    /// Signs `ε` with `Σ ε_i ω_i` in each face, face by face.
    pub fn sign_patterns(&self) -> Vec<Vec<i64>> {
        let basis = self.vertex_basis();
        self.ball
            .faces
            .iter()
            .map(|f| basis.iter().map(|w| if f.vertices.iter().any(|&v| &self.vertex_classes[v] == w) { 1 } else { -1 }).collect())
            .collect()
    }

    /// Vertices in antipodal pairs spanning the space, each face a simplex
    /// on one vertex from every pair, `2^dim` faces.
    pub fn is_cross_polytope(&self) -> bool {
        let d = self.ball.dim;
        let vs = &self.vertex_classes;
        if vs.len() != 2 * d || self.ball.faces.len() != 1 << d || !self.ball.lineality.is_empty() {
            return false;
        }
        let partner: Vec<Option<usize>> = vs.iter().map(|v| vs.iter().position(|u| u.iter().zip(v).all(|(a, b)| *a == -b))).collect();
        if partner.iter().any(Option::is_none) {
            return false;
        }
        self.ball.faces.iter().all(|f| f.vertices.len() == d && f.vertices.iter().all(|&i| !f.vertices.contains(&partner[i].unwrap())))
    }

    /// Sum of the vertices of each face: one class in every open face cone.
    pub fn sign_classes(&self) -> Vec<Vec<i64>> {
        self.ball
            .faces
            .iter()
            .map(|f| {
                let mut c = vec![0; self.basis.len()];
                for &v in &f.vertices {
                    for (k, x) in self.vertex_classes[v].iter().enumerate() {
                        c[k] += x;
                    }
                }
                c
            })
            .collect()
    }

    pub fn certify_sign_classes(&self, opts: &FiberOptions) -> Result<Vec<FiberCertificate>> {
        self.sign_classes().iter().map(|c| certify_fiber(self.triangulation(), &self.class(c), opts)).collect()
    }

    /// Best norm bound per vertex class after a randomized search.
    pub fn vertex_bounds(&self, cfg: &SearchConfig) -> Result<Vec<i64>> {
        let classes: Vec<Cocycle> = self.vertex_classes.iter().map(|v| self.class(v)).collect();
        Ok(randomized_norm_search(self.triangulation(), &classes, cfg)?.best.iter().map(|b| b.bound).collect())
    }
}

/// Everything the `whitehead` command reports.
pub struct WhiteheadReport {
    pub n: usize,
    pub tets: usize,
    pub dim: usize,
    pub delta_terms: usize,
    pub cross_polytope: bool,
    pub faces: usize,
    pub obstruction_passing: usize,
    /// Sign pattern, verdict and χ per face.
    pub sign_classes: Vec<(Vec<i64>, Verdict, i64)>,
    pub fibered_pairs: usize,
    pub excluded: usize,
    pub vertex_bounds: Vec<(Vec<i64>, i64)>,
}

pub fn whitehead_report(base: &Triangulation, n: usize, opts: &FiberOptions, search: &SearchConfig) -> Result<WhiteheadReport> {
    let wc = whitehead_cover(base, n)?;
    let certs = wc.certify_sign_classes(opts)?;
    let signs = wc.sign_classes();
    let fibered: Vec<Vec<i64>> = signs.iter().zip(&certs).filter(|(_, c)| c.verdict == Verdict::Fibers).map(|(s, _)| s.clone()).collect();
    let (fibered_pairs, excluded) = face_count_ledger(&wc.ball, &fibered);
    let bounds = wc.vertex_bounds(search)?;
    Ok(WhiteheadReport {
        n,
        tets: wc.triangulation().ntets(),
        dim: wc.ball.dim,
        delta_terms: wc.alexander.delta.term_count(),
        cross_polytope: wc.is_cross_polytope(),
        faces: wc.ball.faces.len(),
        obstruction_passing: wc.ball.faces.iter().filter(|f| f.coefficient.abs() == 1.into()).count(),
        sign_classes: wc.sign_patterns().into_iter().zip(&certs).map(|(s, c)| (s, c.verdict, c.euler)).collect(),
        fibered_pairs,
        excluded: excluded.len(),
        vertex_bounds: wc.vertex_classes.iter().cloned().zip(bounds).collect(),
    })
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for WhiteheadReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "whitehead v1")?;
        writeln!(f, "n {}", self.n)?;
        writeln!(f, "tets {}", self.tets)?;
        writeln!(f, "b1 {}", self.dim)?;
        writeln!(f, "delta_terms {}", self.delta_terms)?;
        writeln!(f, "ball {}", if self.cross_polytope { "cross-polytope" } else { "other" })?;
        writeln!(f, "faces {}", self.faces)?;
        writeln!(f, "obstruction_passing {}", self.obstruction_passing)?;
        for (c, v, chi) in &self.sign_classes {
            let signs: Vec<&str> = c.iter().map(|&e| if e > 0 { "+" } else { "-" }).collect();
            writeln!(f, "sign {} {} chi {}", signs.join(""), if *v == Verdict::Fibers { "FIBERS" } else { "UNKNOWN" }, chi)?;
        }
        writeln!(f, "fibered_face_pairs {}", self.fibered_pairs)?;
        writeln!(f, "excluded {}", self.excluded)?;
        for (c, b) in &self.vertex_bounds {
            writeln!(f, "vertex {} bound {}", join(c), b)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_cover_is_a_square_of_fibered_faces() {
        let base = Triangulation::parse(WHITEHEAD_TRI).unwrap();
        let wc = whitehead_cover(&base, 1).unwrap();
        assert!(wc.is_cross_polytope());
        assert_eq!(wc.ball.faces.len(), 4);
        let omega = wc.vertex_basis();
        assert_eq!(omega.len(), 2);
        // the vertex basis is unimodular
        assert_eq!((omega[0][0] * omega[1][1] - omega[0][1] * omega[1][0]).abs(), 1);
        let mut patterns = wc.sign_patterns();
        patterns.sort();
        assert_eq!(patterns, vec![vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]);
        for (eps, face_sum) in wc.sign_patterns().iter().zip(wc.sign_classes()) {
            assert_eq!(wc.omega_class(eps), wc.class(&face_sum));
        }
        for cert in wc.certify_sign_classes(&FiberOptions::default()).unwrap() {
            assert_eq!(cert.verdict, Verdict::Fibers);
            assert_eq!(cert.euler, -2);
        }
    }
}
