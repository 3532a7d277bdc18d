//! Alexander norm, its unit ball, and comparison with Thurston-norm bounds.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::polytope::{dot, q};
use crate::exactalg::{dual_norm_ball, newton_polytope, DualBall, LaurentPoly};

/// `max_{i,j} ω(g_i − g_j)` over the exponents of `Δ`.
pub fn alexander_norm(delta: &LaurentPoly, omega: &[i64]) -> Result<BigInt> {
    if omega.len() != delta.nvars() {
        return Err(Error::Invalid(format!("class has length {}, expected {}", omega.len(), delta.nvars())));
    }
    if delta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let w: Vec<BigRational> = omega.iter().map(|&x| q(x)).collect();
    Ok(newton_polytope(delta)?.width(&w).to_integer())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallFace {
    /// The functional `g_i − g_j` whose level set `= 1` is this face.
    pub functional: Vec<BigRational>,
    /// Indices into the ball's vertex list.
    pub vertices: Vec<usize>,
    pub barycenter: Vec<BigRational>,
    /// Exponent of the Newton-polytope vertex the face is dual to.
    pub dual_vertex: Vec<i32>,
    pub coefficient: BigInt,
}

impl BallFace {
    /// Passes the necessary condition for fibering: coefficient `±1`.
    pub fn obstruction_passes(&self) -> bool {
        self.coefficient.abs().is_one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormBall {
    pub dim: usize,
    pub vertices: Vec<Vec<BigRational>>,
    pub faces: Vec<BallFace>,
    pub lineality: Vec<Vec<BigInt>>,
    /// b₁ = 1: the norm is reported without McMullen's correction.
    pub uncorrected: bool,
}

pub fn alexander_ball(delta: &LaurentPoly) -> Result<NormBall> {
    let np = newton_polytope(delta)?;
    let DualBall { polytope, faces, lineality } = dual_norm_ball(&np)?;
    let faces = faces
        .facets
        .into_iter()
        .map(|f| {
            // an interior point of the face is maximized at a unique vertex
            let best = np.maximizers(&f.barycenter);
            assert_eq!(best.len(), 1, "face barycenter must single out a Newton vertex");
            let v = &np.vertices()[best[0]];
            let e: Vec<i32> = v.iter().map(|x| x.to_integer().try_into().unwrap()).collect();
            let coefficient = delta.coeff(&e);
            BallFace { functional: f.normal, vertices: f.vertices, barycenter: f.barycenter, dual_vertex: e, coefficient }
        })
        .collect();
    Ok(NormBall { dim: delta.nvars(), vertices: polytope.vertices().to_vec(), faces, lineality, uncorrected: delta.nvars() == 1 })
}

pub fn fibering_obstruction(ball: &NormBall, face: usize) -> Result<bool> {
    ball.faces
        .get(face)
        .map(|f| f.obstruction_passes())
        .ok_or_else(|| Error::Invalid(format!("face {face} out of range")))
}

impl NormBall {
    /// Index of the face whose open cone contains `ω`, if any.
    pub fn face_of(&self, omega: &[BigRational]) -> Option<usize> {
        let vals: Vec<BigRational> = self.faces.iter().map(|f| dot(&f.functional, omega)).collect();
        let max = vals.iter().max()?.clone();
        if !max.is_positive() {
            return None;
        }
        let hits: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == max).collect();
        (hits.len() == 1).then_some(hits[0])
    }

    /// Norm of `ω`: the maximum of the face functionals (0 on lineality).
    pub fn norm(&self, omega: &[BigRational]) -> BigRational {
        self.faces.iter().map(|f| dot(&f.functional, omega)).max().unwrap_or_else(BigRational::zero).max(BigRational::zero())
    }

    /// Faces of the ball paired with their antipodes.
    pub fn antipodal_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            let neg: Vec<BigRational> = f.functional.iter().map(|x| -x).collect();
            if let Some(j) = self.faces.iter().position(|g| g.functional == neg) {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `ball v1` text.
pub struct BallReport<'a>(&'a NormBall);

impl NormBall {
    pub fn report(&self) -> BallReport<'_> {
        BallReport(self)
    }
}

fn row<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for BallReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.0;
        writeln!(f, "ball v1")?;
        writeln!(f, "dim {}", b.dim)?;
        if b.uncorrected {
            writeln!(f, "note b1 = 1, norm not corrected")?;
        }
        for l in &b.lineality {
            writeln!(f, "lineality {}", row(l))?;
        }
        for v in &b.vertices {
            writeln!(f, "vertex {}", row(v))?;
        }
        for (i, face) in b.faces.iter().enumerate() {
            writeln!(
                f,
                "face {i} functional {} coefficient {} obstruction {} vertices {}",
                row(&face.functional),
                face.coefficient,
                if face.obstruction_passes() { "pass" } else { "fail" },
                row(&face.vertices)
            )?;
        }
        for (i, j) in b.antipodal_pairs() {
            writeln!(f, "pair {i} {j}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sandwich {
    /// Upper bound meets the Alexander norm: Thurston norm equals it.
    Certified { norm: BigInt },
    Inconclusive { reason: String },
}

/// Compares Thurston-norm upper bounds with the Alexander norm (a lower
/// bound when b₁ ≥ 2).
pub fn norm_sandwich(delta: &LaurentPoly, bounds: &[(Vec<i64>, BigInt)]) -> Result<Vec<Sandwich>> {
    bounds
        .iter()
        .map(|(omega, bound)| {
            if delta.nvars() < 2 {
                return Ok(Sandwich::Inconclusive { reason: "b1 = 1: Alexander norm is not a lower bound".into() });
            }
            let a = alexander_norm(delta, omega)?;
            Ok(if *bound == a {
                Sandwich::Certified { norm: a }
            } else if *bound > a {
                Sandwich::Inconclusive { reason: format!("upper bound {bound} exceeds Alexander norm {a}") }
            } else {
                return Err(Error::Invalid(format!("upper bound {bound} below Alexander norm {a}: inconsistent input")));
            })
        })
        .collect()
}

/// Certified faces: every vertex of the face (scaled to an integral class)
/// carries a certified bound.
pub fn certified_faces(ball: &NormBall, certified: &[Vec<i64>]) -> Vec<bool> {
    let rays: Vec<Vec<BigRational>> = certified.iter().map(|c| c.iter().map(|&x| q(x)).collect()).collect();
    ball.faces
        .iter()
        .map(|f| {
            f.vertices.iter().all(|&v| {
                let vert = &ball.vertices[v];
                rays.iter().any(|r| parallel(r, vert))
            })
        })
        .collect()
}

fn parallel(a: &[BigRational], b: &[BigRational]) -> bool {
    // positive multiples
    let Some(k) = a.iter().position(|x| !x.is_zero()) else { return false };
    if b[k].is_zero() || b[k].is_positive() != a[k].is_positive() {
        return false;
    }
    let ratio = &b[k] / &a[k];
    a.iter().zip(b).all(|(x, y)| x * &ratio == *y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::laurent::var_names;

    fn whitehead_delta() -> LaurentPoly {
        let vs = var_names(&["x", "y"]);
        let one = LaurentPoly::one(vs.clone());
        LaurentPoly::var(vs.clone(), 0).sub(&one).mul(&LaurentPoly::var(vs, 1).sub(&one))
    }

    #[test]
    fn constant_norm_is_zero() {
        let d = LaurentPoly::constant(var_names(&["x", "y"]), 3);
        assert_eq!(alexander_norm(&d, &[5, -2]).unwrap(), BigInt::zero());
    }

    #[test]
    fn whitehead_norm() {
        assert_eq!(alexander_norm(&whitehead_delta(), &[1, 1]).unwrap(), BigInt::from(2));
        let ball = alexander_ball(&whitehead_delta()).unwrap();
        assert_eq!(ball.faces.len(), 4);
        assert_eq!(ball.antipodal_pairs().len(), 2);
        assert!(ball.faces.iter().all(|f| f.obstruction_passes()));
    }

    #[test]
    fn sandwich_gates() {
        let d = whitehead_delta();
        let v = norm_sandwich(&d, &[(vec![1, 1], BigInt::from(2)), (vec![1, 0], BigInt::from(2))]).unwrap();
        assert_eq!(v[0], Sandwich::Certified { norm: BigInt::from(2) });
        assert!(matches!(v[1], Sandwich::Inconclusive { .. }));
        let t = LaurentPoly::var(var_names(&["t"]), 0);
        let v = norm_sandwich(&t, &[(vec![1], BigInt::from(1))]).unwrap();
        assert!(matches!(v[0], Sandwich::Inconclusive { .. }));
    }

    #[test]
    fn monomial_ball_is_everything() {
        let d = LaurentPoly::monomial(var_names(&["x", "y"]), vec![2, 1], 1);
        let ball = alexander_ball(&d).unwrap();
        assert!(ball.faces.is_empty());
        assert_eq!(ball.lineality.len(), 2);
    }
}
