//! The Alexander polynomial as the gcd of the first elementary ideal.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::laurent::default_var_names;
use crate::exactalg::{laurent_gcd, laurent_maximal_minors, newton_polytope, IntMatrix, LatticePolytope, LaurentPoly};
use crate::fpgroup::Presentation;

use super::fox::{fox_matrix, fundamental_identity_holds, AbelianizationMap, SparseMatrix};

#[derive(Clone, Debug)]
pub struct AlexanderData {
    pub phi: AbelianizationMap,
    pub vars: Arc<[String]>,
    pub fox: SparseMatrix,
    pub delta: LaurentPoly,
    /// `None` when `Δ = 0`.
    pub newton: Option<LatticePolytope>,
    /// Coefficient of `Δ` at each Newton-polytope vertex.
    pub vertex_coefficients: Vec<BigInt>,
}

pub fn alexander_polynomial(p: &Presentation) -> Result<AlexanderData> {
    let phi = AbelianizationMap::from_presentation(p);
    alexander_polynomial_with(p, phi)
}

/// Same, with a caller-chosen basis of the free abelianization.
pub fn alexander_polynomial_with(p: &Presentation, phi: AbelianizationMap) -> Result<AlexanderData> {
    if phi.rank == 0 {
        return Err(Error::RankZero);
    }
    let vars = default_var_names(phi.rank);
    let fox = fox_matrix(p, &phi, &vars);
    assert!(fundamental_identity_holds(p, &phi, &vars, &fox), "Fox fundamental identity failed");
    let col_t: Vec<Vec<i32>> = phi.images.iter().map(|v| v.iter().map(|&x| x as i32).collect()).collect();
    let delta = first_elementary_gcd(&vars, fox.clone(), p.ngens(), &col_t)?;
    let (newton, vertex_coefficients) = if delta.is_zero() {
        (None, Vec::new())
    } else {
        let np = newton_polytope(&delta)?;
        let coeffs = np
            .vertices()
            .iter()
            .map(|v| {
                let e: Vec<i32> = v.iter().map(|x| x.to_integer().try_into().unwrap()).collect();
                delta.coeff(&e)
            })
            .collect();
        (Some(np), coeffs)
    };
    Ok(AlexanderData { phi, vars, fox, delta, newton, vertex_coefficients })
}

/// gcd of the `(g−1)`-minors of a matrix whose columns satisfy
/// `Σ_j col_j·(t_j − 1) = 0`, with `t_j` the monomial `col_t[j]`.
pub fn first_elementary_gcd(
    vars: &Arc<[String]>,
    mut rows: SparseMatrix,
    ncols: usize,
    col_t: &[Vec<i32>],
) -> Result<LaurentPoly> {
    let mut active_cols: BTreeSet<usize> = (0..ncols).collect();
    loop {
        eliminate_units(&mut rows, &mut active_cols);
        rows.retain(|r| !r.is_empty());
        if !reduce_by_division(&mut rows) {
            break;
        }
        rows.retain(|r| !r.is_empty());
    }
    let one = LaurentPoly::one(vars.clone());
    let g = active_cols.len();
    if g <= 1 {
        return Ok(one);
    }
    if rows.len() < g - 1 {
        return Ok(LaurentPoly::zero(vars.clone()));
    }
    let cols: Vec<usize> = active_cols.iter().copied().collect();
    let t_minus_one = |j: usize| LaurentPoly::monomial(vars.clone(), col_t[j].clone(), 1).sub(&one);
    // g0 = gcd_i (t_i − 1)
    let mut g0 = LaurentPoly::zero(vars.clone());
    for &c in &cols {
        g0 = laurent_gcd(&g0, &t_minus_one(c))?;
    }
    let pivot_col = cols.iter().copied().filter(|&c| col_t[c].iter().any(|&x| x != 0)).min_by_key(|&c| {
        rows.iter().filter(|r| r.contains_key(&c)).count()
    });
    // columns of the transpose are the rows of the matrix
    let transpose = |keep: &[usize]| -> Vec<Vec<LaurentPoly>> {
        keep.iter()
            .map(|c| rows.iter().map(|r| r.get(c).cloned().unwrap_or_else(|| LaurentPoly::zero(vars.clone()))).collect())
            .collect()
    };
    let minors_gcd = |keep: &[usize], acc: LaurentPoly| -> Result<LaurentPoly> {
        let mut acc = acc;
        for (_, m) in laurent_maximal_minors(vars, &transpose(keep)) {
            acc = laurent_gcd(&acc, &m)?;
        }
        Ok(acc)
    };
    match pivot_col {
        Some(j) => {
            let keep: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let acc = minors_gcd(&keep, LaurentPoly::zero(vars.clone()))?;
            if acc.is_zero() {
                return Ok(acc);
            }
            let num = acc.mul(&g0);
            let delta = num.div_exact(&t_minus_one(j)).expect("t_j − 1 divides the minor gcd");
            Ok(delta.canonical())
        }
        None => {
            // every remaining generator is in the kernel of φ: use all minors
            let mut acc = LaurentPoly::zero(vars.clone());
            for &j in &cols {
                let keep: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
                acc = minors_gcd(&keep, acc)?;
            }
            Ok(acc.canonical())
        }
    }
}

/// Removes rows and columns through unit pivots (Markowitz order); the
/// elementary ideals of the presented module are unchanged.
fn eliminate_units(rows: &mut SparseMatrix, active: &mut BTreeSet<usize>) {
    let mut col_rows: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows.entry(c).or_default().insert(i);
        }
    }
    let mut alive: Vec<bool> = vec![true; rows.len()];
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            if !alive[i] {
                continue;
            }
            for (&c, e) in r {
                if e.is_unit() {
                    let cost = (r.len() - 1) * (col_rows[&c].len() - 1);
                    if best.map_or(true, |b| (cost, i, c) < b) {
                        best = Some((cost, i, c));
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        let pivot_row = rows[pr].clone();
        let u = &pivot_row[&pc];
        let (e, s) = u.terms().next().map(|(e, s)| (e.clone(), s.clone())).unwrap();
        let inv_exp: Vec<i32> = e.iter().map(|x| -x).collect();
        let others: Vec<usize> = col_rows[&pc].iter().copied().filter(|&i| i != pr).collect();
        for i in others {
            let a = rows[i][&pc].clone();
            // f = a / u
            let f = a.shift(&inv_exp).scale(&s);
            for (&c, v) in &pivot_row {
                let cur = rows[i].get(&c).cloned().unwrap_or_else(|| LaurentPoly::zero(v.vars().clone()));
                let nv = cur.sub(&f.mul(v));
                if nv.is_zero() {
                    rows[i].remove(&c);
                    col_rows.get_mut(&c).unwrap().remove(&i);
                } else {
                    if !rows[i].contains_key(&c) {
                        col_rows.get_mut(&c).unwrap().insert(i);
                    }
                    rows[i].insert(c, nv);
                }
            }
        }
        for &c in pivot_row.keys() {
            col_rows.get_mut(&c).unwrap().remove(&pr);
        }
        rows[pr].clear();
        alive[pr] = false;
        active.remove(&pc);
        col_rows.remove(&pc);
    }
}

/// Applies `row_i −= (a_i/a_p)·row_p` whenever the quotient is exact and the
/// row gets shorter (in terms). Such operations are invertible over Λ.
fn reduce_by_division(rows: &mut SparseMatrix) -> bool {
    let weight = |r: &BTreeMap<usize, LaurentPoly>| r.values().map(|x| x.term_count()).sum::<usize>();
    let mut changed = false;
    let mut progress = true;
    while progress {
        progress = false;
        for p in 0..rows.len() {
            for i in 0..rows.len() {
                if i == p || rows[p].is_empty() {
                    continue;
                }
                let Some((f, _)) = rows[p].iter().find_map(|(c, pv)| {
                    let a = rows[i].get(c)?;
                    Some((a.div_exact(pv)?, *c))
                }) else {
                    continue;
                };
                let mut next = rows[i].clone();
                for (&k, v) in &rows[p] {
                    let cur = next.get(&k).cloned().unwrap_or_else(|| LaurentPoly::zero(v.vars().clone()));
                    let nv = cur.sub(&f.mul(v));
                    if nv.is_zero() {
                        next.remove(&k);
                    } else {
                        next.insert(k, nv);
                    }
                }
                if weight(&next) < weight(&rows[i]) {
                    rows[i] = next;
                    progress = true;
                    changed = true;
                }
            }
        }
    }
    changed
}

/// Substitutes `x ↦ x^L` for a unimodular `L` (columns = images of the
/// coordinate vectors), i.e. exponent `e ↦ L·e`.
pub fn change_basis(p: &LaurentPoly, l: &IntMatrix) -> LaurentPoly {
    let n = p.nvars();
    let terms = p.terms().map(|(e, c)| {
        let ne: Vec<i32> = (0..n)
            .map(|i| (0..n).map(|j| i64::try_from(l.get(i, j)).unwrap() * e[j] as i64).sum::<i64>() as i32)
            .collect();
        (ne, c.clone())
    });
    LaurentPoly::from_terms(p.vars().clone(), terms.collect::<Vec<_>>())
}

/// Finds an integral unimodular `L` with `change_basis(p, L) ≐ q` up to a unit,
/// by matching affine frames of Newton-polytope vertices.
pub fn basis_equivalence(p: &LaurentPoly, q: &LaurentPoly) -> Option<IntMatrix> {
    if p.nvars() != q.nvars() || p.term_count() != q.term_count() || p.is_zero() {
        return None;
    }
    let n = p.nvars();
    let target = q.canonical();
    let pv: Vec<Vec<i64>> = newton_int_vertices(p)?;
    let qv: Vec<Vec<i64>> = newton_int_vertices(q)?;
    if pv.len() != qv.len() {
        return None;
    }
    // affinely independent frame in p's vertices
    let frame = affine_frame(&pv, n)?;
    let base = &pv[frame[0]];
    let src: Vec<Vec<i64>> = frame[1..].iter().map(|&i| pv[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let src_mat = IntMatrix::from_rows(n, &src).transpose();
    let det = src_mat.determinant();
    if det.is_zero() {
        return None;
    }
    for images in permutations(qv.len(), n + 1) {
        let qb = &qv[images[0]];
        let dst: Vec<Vec<i64>> = images[1..].iter().map(|&i| qv[i].iter().zip(qb).map(|(a, b)| a - b).collect()).collect();
        let dst_mat = IntMatrix::from_rows(n, &dst).transpose();
        // L·src = dst → L = dst·adj(src)/det(src)
        let Some(l) = solve_left(&dst_mat, &src_mat) else { continue };
        let d = l.determinant();
        if d.abs() != BigInt::one() {
            continue;
        }
        if change_basis(p, &l).canonical() == target {
            return Some(l);
        }
    }
    None
}

fn newton_int_vertices(p: &LaurentPoly) -> Option<Vec<Vec<i64>>> {
    let np = newton_polytope(p).ok()?;
    Some(np.vertices().iter().map(|v| v.iter().map(|x| x.to_integer().try_into().unwrap()).collect()).collect())
}

fn affine_frame(pts: &[Vec<i64>], n: usize) -> Option<Vec<usize>> {
    let mut chosen = vec![0];
    for i in 1..pts.len() {
        if chosen.len() == n + 1 {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(i);
        let rows: Vec<Vec<i64>> = trial[1..].iter().map(|&k| pts[k].iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect();
        if IntMatrix::from_rows(n, &rows).rank() == trial.len() - 1 {
            chosen = trial;
        }
    }
    (chosen.len() == n + 1).then_some(chosen)
}

fn permutations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

/// Integer `L` with `L·a = b`, if one exists (`a` square and invertible).
fn solve_left(b: &IntMatrix, a: &IntMatrix) -> Option<IntMatrix> {
    let n = a.rows();
    let det = a.determinant();
    // adjugate via cofactors
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor_rows: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a.get(r, c).clone()).collect())
                .collect();
            let m = if n == 1 { BigInt::one() } else { IntMatrix::from_rows(n - 1, &minor_rows).determinant() };
            adj.set(i, j, if (i + j) % 2 == 0 { m } else { -m });
        }
    }
    let prod = b.mul(&adj);
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = prod.get(i, j);
            if !(x % &det).is_zero() {
                return None;
            }
            out.set(i, j, x / &det);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil() {
        let p = Presentation::parse("pres v1\ngens a b\nrel aba = bab\n").unwrap();
        let d = alexander_polynomial(&p).unwrap();
        assert_eq!(d.delta.pretty(), "t^2 - t + 1");
    }

    #[test]
    fn rank_zero_rejected() {
        let p = Presentation::parse("pres v1\ngens a\nrel a^3\n").unwrap();
        assert!(matches!(alexander_polynomial(&p), Err(Error::RankZero)));
    }

    #[test]
    fn torus_is_one() {
        let p = Presentation::parse("pres v1\ngens a b\nrel abAB\n").unwrap();
        assert!(alexander_polynomial(&p).unwrap().delta.is_unit());
    }

    #[test]
    fn free_group_delta_zero() {
        let p = Presentation::free(2);
        assert!(alexander_polynomial(&p).unwrap().delta.is_zero());
    }
}
