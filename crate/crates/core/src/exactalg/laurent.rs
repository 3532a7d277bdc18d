//! Multivariable Laurent polynomials over the integers.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
//! in lexicographic exponent order and zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

type Terms = BTreeMap<Vec<i32>, BigInt>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Arc<[String]>,
    terms: Terms,
}

pub fn var_names(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

/// Default names: `t` for one variable, `x y z w` up to four, `t0 t1 ...`
/// beyond that.
pub fn default_var_names(n: usize) -> Arc<[String]> {
    match n {
        1 => var_names(&["t"]),
        2..=4 => var_names(&["x", "y", "z", "w"][..n]),
        _ => (0..n).map(|i| format!("t{i}")).collect::<Vec<_>>().into(),
    }
}

impl LaurentPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        LaurentPoly { vars, terms: Terms::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: impl Into<BigInt>) -> Self {
        let n = vars.len();
        Self::monomial(vars, vec![0; n], c)
    }

    pub fn one(vars: Arc<[String]>) -> Self {
        Self::constant(vars, 1)
    }

    pub fn monomial(vars: Arc<[String]>, exp: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length must match variable count");
        let c = c.into();
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { vars, terms }
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, 1)
    }

    pub fn from_terms<I>(vars: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, BigInt)>,
    {
        let mut out = Terms::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            add_term(&mut out, e, c);
        }
        LaurentPoly { vars, terms: out }
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[i32]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for `±(monomial)`, the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch { left: self.vars.to_vec(), right: other.vars.to_vec() })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e.clone(), c.clone());
        }
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            add_term(&mut terms, e.clone(), -c);
        }
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        let mut terms = Terms::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                add_term(&mut terms, e, c1 * c2);
            }
        }
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial with exponent `shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.vars.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Componentwise minimum and maximum exponents; `None` for zero.
    pub fn exponent_box(&self) -> Option<(Vec<i32>, Vec<i32>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let (mut lo, mut hi) = (first.clone(), first.clone());
        for e in it {
            for i in 0..e.len() {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        Some((lo, hi))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        let (plo, phi) = self.exponent_box().unwrap();
        let (dlo, dhi) = d.exponent_box().unwrap();
        let n = self.nvars();
        let qlo: Vec<i32> = (0..n).map(|i| plo[i] - dlo[i]).collect();
        let qhi: Vec<i32> = (0..n).map(|i| phi[i] - dhi[i]).collect();
        if (0..n).any(|i| qlo[i] > qhi[i]) {
            return None;
        }
        let (dlead_e, dlead_c) = d.terms.iter().next_back().unwrap();
        let mut rem = self.terms.clone();
        let mut quot = Terms::new();
        while let Some((e, c)) = rem.iter().next_back() {
            if !c.is_multiple_of(dlead_c) {
                return None;
            }
            let qe: Vec<i32> = e.iter().zip(dlead_e).map(|(a, b)| a - b).collect();
            if (0..n).any(|i| qe[i] < qlo[i] || qe[i] > qhi[i]) {
                return None;
            }
            let qc = c / dlead_c;
            for (de, dc) in &d.terms {
                let ee: Vec<i32> = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                add_term(&mut rem, ee, -(&qc * dc));
            }
            quot.insert(qe, qc);
        }
        Some(LaurentPoly { vars: self.vars.clone(), terms: quot })
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Canonical associate: multiplied by `±monomial` so that the
    /// lexicographically smallest exponent is zero with positive coefficient.
    pub fn canonical(&self) -> Self {
        let Some((e, c)) = self.terms.iter().next() else {
            return self.clone();
        };
        let shift: Vec<i32> = e.iter().map(|x| -x).collect();
        let p = self.shift(&shift);
        if c.is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Integer gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Substitutes rational values for the variables.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut m = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                if k >= 0 {
                    m *= num_traits::pow(x.clone(), k as usize);
                } else {
                    m /= num_traits::pow(x.clone(), (-k) as usize);
                }
            }
            total += m;
        }
        total
    }

    /// Coefficient at each exponent in the given list, as stored.
    pub fn exponents(&self) -> Vec<Vec<i32>> {
        self.terms.keys().cloned().collect()
    }

    /// Same polynomial over a renamed variable list of equal length.
    pub fn with_vars(&self, vars: Arc<[String]>) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        LaurentPoly { vars, terms: self.terms.clone() }
    }

    /// Human-readable form, e.g. `16*x*y*z - x*y + 16`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(&x, _)| x != 0)
                .map(|(&x, v)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            if k == 0 {
                if c.is_negative() {
                    out.push('-');
                }
                out.push_str(&body);
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }

    /// Parses the `poly vars ...` / `term ...` text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vars: Option<Arc<[String]>> = None;
        let mut terms = Terms::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts[0] {
                "poly" => {
                    if parts.get(1) != Some(&"vars") {
                        return Err(Error::parse(i + 1, "expected `poly vars <names>`"));
                    }
                    vars = Some(parts[2..].iter().map(|s| s.to_string()).collect::<Vec<_>>().into());
                }
                "term" => {
                    let v = vars.as_ref().ok_or_else(|| Error::parse(i + 1, "term before header"))?;
                    if parts.len() != 2 + v.len() {
                        return Err(Error::parse(i + 1, format!("expected {} exponents", v.len())));
                    }
                    let c: BigInt = parts[1]
                        .parse()
                        .map_err(|_| Error::parse(i + 1, format!("bad coefficient `{}`", parts[1])))?;
                    let e = parts[2..]
                        .iter()
                        .map(|s| s.parse::<i32>().map_err(|_| Error::parse(i + 1, format!("bad exponent `{s}`"))))
                        .collect::<Result<Vec<_>>>()?;
                    add_term(&mut terms, e, c);
                }
                other => return Err(Error::parse(i + 1, format!("unknown keyword `{other}`"))),
            }
        }
        let vars = vars.ok_or_else(|| Error::parse(0, "missing `poly vars` header"))?;
        Ok(LaurentPoly { vars, terms })
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "poly vars {}", self.vars.join(" "))?;
        for (e, c) in &self.terms {
            let es: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            writeln!(f, "term {} {}", c, es.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

fn add_term(terms: &mut Terms, e: Vec<i32>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match terms.entry(e) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

// ---------------------------------------------------------------------------
// gcd over Z[x_0, ..., x_{n-1}] by recursive primitive remainder sequences

/// A polynomial in the variable `var` whose coefficients are polynomials in
/// the remaining variables (dense by degree).
type Univariate = Vec<Terms>;

fn split(p: &Terms, var: usize) -> Univariate {
    let deg = p.keys().map(|e| e[var]).max().unwrap_or(0) as usize;
    let mut out: Univariate = vec![Terms::new(); deg + 1];
    for (e, c) in p {
        let mut ee = e.clone();
        let k = ee[var] as usize;
        ee[var] = 0;
        out[k].insert(ee, c.clone());
    }
    out
}

fn join(u: &Univariate, var: usize) -> Terms {
    let mut out = Terms::new();
    for (k, coeff) in u.iter().enumerate() {
        for (e, c) in coeff {
            let mut ee = e.clone();
            ee[var] = k as i32;
            out.insert(ee, c.clone());
        }
    }
    out
}

fn t_mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e: Vec<i32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            add_term(&mut out, e, c1 * c2);
        }
    }
    out
}

fn t_sub(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (e, c) in b {
        add_term(&mut out, e.clone(), -c);
    }
    out
}

/// Exact division of polynomials with non-negative exponents.
fn t_div(a: &Terms, d: &Terms) -> Option<Terms> {
    let (de, dc) = d.iter().next_back()?;
    let mut rem = a.clone();
    let mut quot = Terms::new();
    while let Some((e, c)) = rem.iter().next_back() {
        if !c.is_multiple_of(dc) {
            return None;
        }
        let qe: Vec<i32> = e.iter().zip(de).map(|(x, y)| x - y).collect();
        if qe.iter().any(|&x| x < 0) {
            return None;
        }
        let qc = c / dc;
        for (e2, c2) in d {
            let ee: Vec<i32> = e2.iter().zip(&qe).map(|(x, y)| x + y).collect();
            add_term(&mut rem, ee, -(&qc * c2));
        }
        quot.insert(qe, qc);
    }
    Some(quot)
}

fn trim(u: &mut Univariate) {
    while u.len() > 1 && u.last().unwrap().is_empty() {
        u.pop();
    }
}

fn degree(u: &Univariate) -> usize {
    u.len() - 1
}

fn is_zero_u(u: &Univariate) -> bool {
    u.iter().all(|c| c.is_empty())
}

/// Pseudo-remainder of `a` by `b` in the split variable.
fn prem(a: &Univariate, b: &Univariate) -> Univariate {
    let db = degree(b);
    let lc = b.last().unwrap();
    let mut r = a.clone();
    trim(&mut r);
    while !is_zero_u(&r) && degree(&r) >= db {
        let dr = degree(&r);
        let c = r[dr].clone();
        for coeff in r.iter_mut() {
            *coeff = t_mul(coeff, lc);
        }
        for (k, bc) in b.iter().enumerate() {
            let prod = t_mul(&c, bc);
            r[k + dr - db] = t_sub(&r[k + dr - db], &prod);
        }
        trim(&mut r);
        if r.len() == 1 && r[0].is_empty() {
            break;
        }
    }
    r
}

fn normalize_sign(p: Terms) -> Terms {
    match p.iter().next_back() {
        Some((_, c)) if c.is_negative() => p.into_iter().map(|(e, c)| (e, -c)).collect(),
        _ => p,
    }
}

/// gcd of polynomials in variables `0..level` (higher variables absent).
fn gcd_rec(p: &Terms, q: &Terms, level: usize) -> Terms {
    if p.is_empty() {
        return normalize_sign(q.clone());
    }
    if q.is_empty() {
        return normalize_sign(p.clone());
    }
    if level == 0 {
        let a = p.values().next().unwrap();
        let b = q.values().next().unwrap();
        let e = p.keys().next().unwrap().clone();
        let mut out = Terms::new();
        out.insert(e, a.gcd(b));
        return out;
    }
    let var = level - 1;
    let pu = split(p, var);
    let qu = split(q, var);
    let cp = content_u(&pu, level - 1);
    let cq = content_u(&qu, level - 1);
    let g_cont = gcd_rec(&cp, &cq, level - 1);
    let mut a = divide_u(&pu, &cp);
    let mut b = divide_u(&qu, &cq);
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let g_pp: Univariate = if degree(&b) == 0 {
        unit_u(p)
    } else {
        loop {
            let r = prem(&a, &b);
            if is_zero_u(&r) {
                break primitive_u(&b, level - 1);
            }
            if degree(&r) == 0 {
                break unit_u(p);
            }
            a = b;
            b = primitive_u(&r, level - 1);
        }
    };
    normalize_sign(t_mul(&g_cont, &join(&g_pp, var)))
}

fn unit_u(p: &Terms) -> Univariate {
    let n = p.keys().next().unwrap().len();
    let mut one = Terms::new();
    one.insert(vec![0; n], BigInt::one());
    vec![one]
}

fn content_u(u: &Univariate, level: usize) -> Terms {
    let mut g = Terms::new();
    for c in u {
        if c.is_empty() {
            continue;
        }
        g = gcd_rec(&g, c, level);
        if g.len() == 1 && g.values().next().unwrap().is_one() && g.keys().next().unwrap().iter().all(|&x| x == 0) {
            break;
        }
    }
    g
}

fn divide_u(u: &Univariate, d: &Terms) -> Univariate {
    u.iter().map(|c| t_div(c, d).expect("content divides every coefficient")).collect()
}

fn primitive_u(u: &Univariate, level: usize) -> Univariate {
    let c = content_u(u, level);
    let mut out = divide_u(u, &c);
    trim(&mut out);
    out
}

/// gcd in the Laurent ring, normalized to the canonical associate.
pub fn laurent_gcd(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly> {
    p.same_vars(q)?;
    if p.is_zero() {
        return Ok(q.canonical());
    }
    if q.is_zero() {
        return Ok(p.canonical());
    }
    if p.is_unit() || q.is_unit() {
        return Ok(LaurentPoly::one(p.vars.clone()));
    }
    let shift_to_poly = |x: &LaurentPoly| {
        let (lo, _) = x.exponent_box().unwrap();
        let neg: Vec<i32> = lo.iter().map(|v| -v).collect();
        x.shift(&neg).terms
    };
    let a = shift_to_poly(p);
    let b = shift_to_poly(q);
    let g = gcd_rec(&a, &b, p.nvars());
    Ok(LaurentPoly { vars: p.vars.clone(), terms: g }.canonical())
}

/// Determinant of a square matrix of Laurent polynomials by fraction-free
/// (Bareiss) elimination.
pub fn laurent_det(vars: &Arc<[String]>, m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    if m.is_empty() {
        return LaurentPoly::one(vars.clone());
    }
    bareiss_det(vars, m)
}

/// All `r×r` minors of an `r×m` matrix, up to sign, keyed by column subset.
/// One fraction-free Gauss–Jordan pass gives `[d·I | E]`; by Sylvester's
/// identity a minor on columns `S` is `det E[P∖S, S∖P] / d^{k−1}`.
pub fn laurent_maximal_minors(vars: &Arc<[String]>, m: &[Vec<LaurentPoly>]) -> Vec<(Vec<usize>, LaurentPoly)> {
    let r = m.len();
    let ncols = m.first().map_or(0, |row| row.len());
    let zero = || LaurentPoly::zero(vars.clone());
    let mut all = Vec::new();
    let mut sub = (0..r).collect::<Vec<usize>>();
    let mut subsets = Vec::new();
    if r <= ncols {
        loop {
            subsets.push(sub.clone());
            let Some(i) = (0..r).rev().find(|&i| sub[i] < ncols - r + i) else { break };
            sub[i] += 1;
            for j in i + 1..r {
                sub[j] = sub[j - 1] + 1;
            }
        }
    }
    if r == 0 {
        return vec![(Vec::new(), LaurentPoly::one(vars.clone()))];
    }
    let mut a = m.to_vec();
    let mut prev = LaurentPoly::one(vars.clone());
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let k = pivots.len();
        if k == r {
            break;
        }
        let Some(p) = (k..r).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| (!a[i][c].is_unit(), a[i][c].term_count())) else {
            continue;
        };
        a.swap(p, k);
        for i in 0..r {
            if i == k {
                continue;
            }
            for j in 0..ncols {
                if j == c {
                    continue;
                }
                let num = a[i][j].mul(&a[k][c]).sub(&a[i][c].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Gauss-Jordan division is exact");
            }
            a[i][c] = zero();
        }
        prev = a[k][c].clone();
        pivots.push(c);
    }
    if pivots.len() < r {
        return subsets.into_iter().map(|s| (s, zero())).collect();
    }
    let d = prev;
    for s in subsets {
        let missing: Vec<usize> = (0..r).filter(|&i| !s.contains(&pivots[i])).collect();
        let extra: Vec<usize> = s.iter().copied().filter(|c| !pivots.contains(c)).collect();
        let minor = match missing.len() {
            0 => d.clone(),
            1 => a[missing[0]][extra[0]].clone(),
            k => {
                let block: Vec<Vec<LaurentPoly>> = missing.iter().map(|&i| extra.iter().map(|&j| a[i][j].clone()).collect()).collect();
                let det = bareiss_det(vars, &block);
                det.div_exact(&d.pow(k as u32 - 1)).expect("Sylvester quotient is exact")
            }
        };
        all.push((s, minor));
    }
    all
}

fn bareiss_det(vars: &Arc<[String]>, m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(vars.clone());
    }
    let mut a: Vec<Vec<LaurentPoly>> = m.to_vec();
    let mut prev = LaurentPoly::one(vars.clone());
    let mut negate = false;
    for k in 0..n {
        // prefer a unit pivot, then the sparsest nonzero entry
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| (!a[i][k].is_unit(), a[i][k].term_count()));
        let Some(p) = pivot else {
            return LaurentPoly::zero(vars.clone());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = LaurentPoly::zero(vars.clone());
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Arc<[String]> {
        var_names(&["x", "y", "z"])
    }

    fn v(vars: &Arc<[String]>, i: usize) -> LaurentPoly {
        LaurentPoly::var(vars.clone(), i)
    }

    fn c(vars: &Arc<[String]>, k: i64) -> LaurentPoly {
        LaurentPoly::constant(vars.clone(), k)
    }

    pub(crate) fn base_factor() -> LaurentPoly {
        let vs = xyz();
        let (x, y, z) = (v(&vs, 0), v(&vs, 1), v(&vs, 2));
        x.mul(&y).mul(&z).scale(&BigInt::from(16))
            .sub(&x.mul(&y))
            .sub(&x.mul(&z))
            .sub(&y)
            .sub(&z)
            .add(&c(&vs, 16))
    }

    #[test]
    fn identity_and_expansion() {
        let vs = var_names(&["x", "y"]);
        let (x, y) = (v(&vs, 0), v(&vs, 1));
        let one = c(&vs, 1);
        let p = x.sub(&one).mul(&y.sub(&one));
        assert_eq!(p.mul(&one), p);
        assert_eq!(p.pretty(), "x*y - x - y + 1");
    }

    #[test]
    fn fourth_power_vertex_monomials() {
        let f4 = base_factor().pow(4);
        assert_eq!(f4.coeff(&[4, 4, 4]), BigInt::from(16u32.pow(4)));
        assert_eq!(f4.coeff(&[0, 0, 0]), BigInt::from(16u32.pow(4)));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = c(&var_names(&["x"]), 1);
        let b = c(&var_names(&["y"]), 1);
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch { .. })));
    }

    #[test]
    fn exact_division() {
        let f = base_factor();
        let g = f.pow(2);
        assert_eq!(g.div_exact(&f).unwrap(), f);
        let vs = xyz();
        assert!(f.div_exact(&v(&vs, 0).sub(&c(&vs, 1))).is_none());
        // negative exponents
        let xinv = LaurentPoly::monomial(vs.clone(), vec![-1, 0, 0], 1);
        let h = f.mul(&xinv);
        assert_eq!(h.div_exact(&f).unwrap(), xinv);
    }

    #[test]
    fn gcd_cases() {
        let vs = var_names(&["x", "y"]);
        let (x, y) = (v(&vs, 0), v(&vs, 1));
        let one = c(&vs, 1);
        let p = x.sub(&one).mul(&y.sub(&one));
        assert_eq!(laurent_gcd(&p, &LaurentPoly::zero(vs.clone())).unwrap(), p.canonical());
        assert_eq!(laurent_gcd(&p, &x.sub(&one)).unwrap(), x.sub(&one).canonical());
        let f = base_factor();
        let g = laurent_gcd(&f.pow(3), &f.pow(2).mul(&v(&xyz(), 1).sub(&c(&xyz(), 2)))).unwrap();
        assert_eq!(g, f.pow(2).canonical());
    }

    #[test]
    fn canonical_form() {
        let vs = var_names(&["t"]);
        let p = LaurentPoly::from_terms(
            vs.clone(),
            vec![(vec![-2], BigInt::from(-1)), (vec![0], BigInt::from(-30)), (vec![2], BigInt::from(-1))],
        );
        assert_eq!(p.canonical().pretty(), "t^4 + 30*t^2 + 1");
    }

    #[test]
    fn determinant_2x2() {
        let vs = var_names(&["t"]);
        let t = v(&vs, 0);
        let one = c(&vs, 1);
        let m = vec![vec![t.clone(), one.clone()], vec![one.clone(), t.clone()]];
        assert_eq!(laurent_det(&vs, &m), t.mul(&t).sub(&one));
    }

    #[test]
    fn text_roundtrip() {
        let f = base_factor();
        let text = f.to_string();
        assert!(text.starts_with("poly vars x y z\n"));
        assert_eq!(LaurentPoly::parse(&text).unwrap(), f);
        assert!(LaurentPoly::parse("poly vars x\nterm 1 2 3\n").is_err());
    }

    fn leibniz(vars: &Arc<[String]>, m: &[Vec<LaurentPoly>]) -> LaurentPoly {
        fn rec(m: &[Vec<LaurentPoly>], row: usize, used: &mut Vec<bool>, sign: bool, acc: LaurentPoly, out: &mut LaurentPoly) {
            if row == m.len() {
                *out = if sign { out.sub(&acc) } else { out.add(&acc) };
                return;
            }
            for c in 0..m.len() {
                if used[c] {
                    continue;
                }
                let inversions = used[c + 1..].iter().filter(|&&u| u).count() % 2 == 1;
                used[c] = true;
                rec(m, row + 1, used, sign ^ inversions, acc.mul(&m[row][c]), out);
                used[c] = false;
            }
        }
        let mut out = LaurentPoly::zero(vars.clone());
        rec(m, 0, &mut vec![false; m.len()], false, LaurentPoly::one(vars.clone()), &mut out);
        out
    }

    #[test]
    fn maximal_minors_match_leibniz() {
        let vs = var_names(&["x", "y"]);
        let (x, y) = (v(&vs, 0), v(&vs, 1));
        let pool = [x.sub(&c(&vs, 1)), y.add(&c(&vs, 2)), x.mul(&y), c(&vs, 0), c(&vs, 3), x.sub(&y).mul(&x)];
        let m: Vec<Vec<LaurentPoly>> = (0..3).map(|i| (0..6).map(|j| pool[(i * 7 + j * 5 + i * j) % 6].clone()).collect()).collect();
        let minors = laurent_maximal_minors(&vs, &m);
        assert_eq!(minors.len(), 20);
        for (cols, got) in minors {
            let sub: Vec<Vec<LaurentPoly>> = m.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
            let want = leibniz(&vs, &sub);
            assert!(got == want || got == want.neg(), "columns {cols:?}");
            assert!(laurent_det(&vs, &sub) == want);
        }
    }
}
