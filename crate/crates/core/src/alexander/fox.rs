//! Free differential calculus composed with the map to the free abelianization.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{smith_normal_form, LaurentPoly};
use crate::fpgroup::{Presentation, Word};

/// Images of the generators in the free part `ℤ^rank` of H₁.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationMap {
    pub rank: usize,
    pub images: Vec<Vec<i64>>,
}

impl AbelianizationMap {
    /// Coordinates from the Smith form `U·A·V = D`: generator `j` maps to
    /// row `j` of `V` restricted to the zero-diagonal columns.
    pub fn from_presentation(p: &Presentation) -> Self {
        let snf = smith_normal_form(&p.relation_matrix());
        let diag = snf.diagonal();
        let free: Vec<usize> = (0..p.ngens()).filter(|&i| diag.get(i).map_or(true, |d| d.is_zero())).collect();
        let images = (0..p.ngens())
            .map(|j| free.iter().map(|&i| snf.v.get(j, i).to_i64().expect("coordinate fits in i64")).collect())
            .collect();
        AbelianizationMap { rank: free.len(), images }
    }

    /// Explicit images; every relator must map to zero.
    pub fn from_images(p: &Presentation, images: Vec<Vec<i64>>) -> Result<Self> {
        let rank = images.first().map_or(0, |v| v.len());
        if images.len() != p.ngens() || images.iter().any(|v| v.len() != rank) {
            return Err(Error::Invalid("one image of common length per generator required".into()));
        }
        let map = AbelianizationMap { rank, images };
        for (k, r) in p.relators().iter().enumerate() {
            if map.eval(r).iter().any(|&x| x != 0) {
                return Err(Error::RelatorNotSatisfied { index: k + 1, relator: r.format(p.names()) });
            }
        }
        Ok(map)
    }

    pub fn eval(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &l in w.letters() {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            for (a, b) in v.iter_mut().zip(img) {
                *a += l.signum() as i64 * b;
            }
        }
        v
    }

    pub fn monomial(&self, vars: &Arc<[String]>, e: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(vars.clone(), e.iter().map(|&x| x as i32).collect(), 1)
    }
}

/// `∂w/∂x_gen` mapped through `φ`.
pub fn fox_derivative(w: &Word, gen: usize, phi: &AbelianizationMap, vars: &Arc<[String]>) -> LaurentPoly {
    let mut prefix = vec![0i64; phi.rank];
    let mut terms: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
    let target = gen as i32 + 1;
    for &l in w.letters() {
        let g = l.unsigned_abs() as usize - 1;
        if l == target {
            *terms.entry(prefix.iter().map(|&x| x as i32).collect()).or_default() += 1;
        }
        for (a, b) in prefix.iter_mut().zip(&phi.images[g]) {
            *a += l.signum() as i64 * b;
        }
        if l == -target {
            *terms.entry(prefix.iter().map(|&x| x as i32).collect()).or_default() -= 1;
        }
    }
    LaurentPoly::from_terms(vars.clone(), terms)
}

/// Sparse Fox matrix: one map `column → entry` per relator.
pub type SparseMatrix = Vec<BTreeMap<usize, LaurentPoly>>;

pub fn fox_matrix(p: &Presentation, phi: &AbelianizationMap, vars: &Arc<[String]>) -> SparseMatrix {
    p.relators()
        .iter()
        .map(|r| {
            let mut gens: Vec<usize> = r.letters().iter().map(|l| l.unsigned_abs() as usize - 1).collect();
            gens.sort_unstable();
            gens.dedup();
            gens.into_iter()
                .map(|g| (g, fox_derivative(r, g, phi, vars)))
                .filter(|(_, d)| !d.is_zero())
                .collect()
        })
        .collect()
}

/// `Σ_j (∂r/∂x_j)(φ(x_j) − 1) = φ(r) − 1` for every row.
pub fn fundamental_identity_holds(p: &Presentation, phi: &AbelianizationMap, vars: &Arc<[String]>, m: &SparseMatrix) -> bool {
    let one = LaurentPoly::one(vars.clone());
    p.relators().iter().zip(m).all(|(r, row)| {
        let mut lhs = LaurentPoly::zero(vars.clone());
        for (&j, d) in row {
            lhs = lhs.add(&d.mul(&phi.monomial(vars, &phi.images[j]).sub(&one)));
        }
        lhs == phi.monomial(vars, &phi.eval(r)).sub(&one)
    })
}
