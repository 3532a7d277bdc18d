//! Dense integer matrices with arbitrary-precision entries, Smith normal
//! form with unimodular transforms, and cokernel reading.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors; every row must have `cols` entries.
    pub fn from_rows<T: Into<BigInt> + Clone>(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has wrong length");
            for (j, x) in row.iter().enumerate() {
                m.data[i * cols + j] = x.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[dst * self.cols + j] += q * s;
            }
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                self.data[i * self.cols + dst] += q * s;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -x;
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let snf = diagonal_only(self.clone());
        snf.iter().filter(|d| !d.is_zero()).count()
    }

    /// Determinant by fraction-free elimination. Panics on non-square input.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    pub fn parse(text: &str) -> Result<IntMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(0, "empty matrix text"))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != "mat" {
            return Err(Error::parse(ln, "expected `mat <rows> <cols>`"));
        }
        let rows: usize = parts[1].parse().map_err(|_| Error::parse(ln, "bad row count"))?;
        let cols: usize = parts[2].parse().map_err(|_| Error::parse(ln, "bad column count"))?;
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(0, format!("missing matrix row {}", i + 1)))?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(Error::parse(ln, format!("expected {cols} entries")));
            }
            for (j, e) in entries.iter().enumerate() {
                let x: BigInt = e.parse().map_err(|_| Error::parse(ln, format!("bad integer `{e}`")))?;
                m.set(i, j, x);
            }
        }
        Ok(m)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mat {} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `u * a * v == d` with `d` diagonal, `d[i] | d[i+1]`, all entries `>= 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }
}

fn min_abs_position(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows {
        for j in t..m.cols {
            let x = m.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m.get(bi, bj).abs() <= x.abs() => {}
                _ => {
                    if x.abs().is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
    }
    best
}

/// Core elimination shared by the transform-tracking and diagonal-only
/// paths.
fn smith_core(m: &mut IntMatrix, mut u: Option<&mut IntMatrix>, mut v: Option<&mut IntMatrix>) {
    let k = m.rows.min(m.cols);
    let mut t = 0;
    while t < k {
        let Some((pi, pj)) = min_abs_position(m, t) else { break };
        m.swap_rows(t, pi);
        if let Some(u) = u.as_deref_mut() {
            u.swap_rows(t, pi);
        }
        m.swap_cols(t, pj);
        if let Some(v) = v.as_deref_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m.rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let q = -m.get(i, t).div_floor(m.get(t, t));
                m.add_row_multiple(i, t, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.add_row_multiple(i, t, &q);
                }
                if !m.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..m.cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let q = -m.get(t, j).div_floor(m.get(t, t));
                m.add_col_multiple(j, t, &q);
                if let Some(v) = v.as_deref_mut() {
                    v.add_col_multiple(j, t, &q);
                }
                if !m.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // bring the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..m.rows {
                    if !m.get(i, t).is_zero() && m.get(i, t).abs() < m.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..m.cols {
                    if !m.get(t, j).is_zero() && m.get(t, j).abs() < m.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.1 == t {
                    m.swap_rows(t, best.0);
                    if let Some(u) = u.as_deref_mut() {
                        u.swap_rows(t, best.0);
                    }
                } else {
                    m.swap_cols(t, best.1);
                    if let Some(v) = v.as_deref_mut() {
                        v.swap_cols(t, best.1);
                    }
                }
                continue;
            }
            let pivot = m.get(t, t).clone();
            let mut offender = None;
            'scan: for i in t + 1..m.rows {
                for j in t + 1..m.cols {
                    if !m.get(i, j).is_multiple_of(&pivot) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    m.add_row_multiple(t, i, &one);
                    if let Some(u) = u.as_deref_mut() {
                        u.add_row_multiple(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if m.get(t, t).is_negative() {
            m.negate_row(t);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    smith_core(&mut d, Some(&mut u), Some(&mut v));
    SmithForm { d, u, v }
}

fn diagonal_only(mut m: IntMatrix) -> Vec<BigInt> {
    smith_core(&mut m, None, None);
    (0..m.rows.min(m.cols)).map(|i| m.get(i, i).clone()).collect()
}

/// Finitely generated abelian group `Z^rank + sum Z/t_i`, torsion in
/// divisibility order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        AbelianGroup { rank, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| u64::try_from(t).unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(if self.rank == 1 { "Z".to_string() } else { format!("Z^{}", self.rank) });
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn invariants_from_diagonal(cols: usize, diag: &[BigInt]) -> AbelianGroup {
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let mut torsion: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
    torsion.sort();
    AbelianGroup { rank: cols - nonzero, torsion }
}

/// Cokernel of a relation matrix (rows = relations, columns = generators).
///
/// Unit pivots are eliminated on a sparse copy first; only the residual
/// block goes through dense Smith reduction.
pub fn abelian_invariants(a: &IntMatrix) -> AbelianGroup {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    let mut alive_cols: Vec<bool> = vec![true; a.cols()];
    let mut eliminated = 0usize;
    loop {
        // Markowitz-style choice: a unit entry in the shortest row
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            if let Some((&j, _)) = row.iter().find(|(_, x)| x.abs().is_one()) {
                if best.map_or(true, |(_, _, len)| row.len() < len) {
                    best = Some((i, j, row.len()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pi]);
        let pv = pivot_row[&pj].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pi {
                continue;
            }
            let Some(x) = row.get(&pj).cloned() else { continue };
            // row -= (x / pv) * pivot_row, pv is a unit
            let q = &x * &pv;
            for (&j, y) in &pivot_row {
                let e = row.entry(j).or_insert_with(BigInt::zero);
                *e -= &q * y;
                if e.is_zero() {
                    row.remove(&j);
                }
            }
        }
        alive_cols[pj] = false;
        eliminated += 1;
    }
    let col_index: Vec<usize> = (0..a.cols()).filter(|&j| alive_cols[j]).collect();
    let residual: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            col_index
                .iter()
                .map(|j| r.get(j).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    let m = IntMatrix::from_rows(col_index.len(), &residual);
    let mut diag = diagonal_only(m);
    diag.extend(std::iter::repeat(BigInt::one()).take(eliminated));
    invariants_from_diagonal(a.cols(), &diag)
}

/// Solves `a x = b` over the integers; `None` if no integral solution.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        let d = if i < a.cols() { snf.d.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            if !c.is_multiple_of(&d) {
                return None;
            }
            y[i] = c / &d;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Basis of the integer kernel `{x : a x = 0}` as a list of vectors.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let k = a.rows().min(a.cols());
    (0..a.cols())
        .filter(|&j| j >= k || snf.d.get(j, j).is_zero())
        .map(|j| (0..a.cols()).map(|i| snf.v.get(i, j).clone()).collect())
        .collect()
}
