//! Degrees, face counts, genera and Betti bounds along the arithmetic tower.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

use super::primes::{first_special_primes, residue_symbol};

/// `d_n = (∏_{i ≤ n} (1 + p_i))²` over the first `n` primes of the set.
pub fn tower_degree(n: usize) -> BigUint {
    let root: BigUint = first_special_primes(n).iter().map(|&p| BigUint::from(p + 1)).product();
    &root * &root
}

/// `ln d_n`, summed prime by prime so it stays finite for large `n`.
fn ln_degree(primes: &[u64]) -> f64 {
    primes.iter().map(|&p| 2.0 * ((p + 1) as f64).ln()).sum()
}

#[derive(Clone, Debug)]
pub struct FaceBound {
    pub n: usize,
    /// Lower bound `2^{2n}` on pairs of fibered faces.
    pub nu: BigUint,
    /// `exp(0.3 ln d_n / ln ln d_n)`.
    pub comparison: f64,
    pub holds: bool,
    /// `2n ln ln d_n / ln d_n`, which tends to 1.
    pub ratio: f64,
}

/// Relative slack applied against the floating-point comparison.
const MARGIN: f64 = 1e-9;

pub fn face_bound(n: usize) -> Result<FaceBound> {
    if n == 0 {
        return Err(Error::Invalid("face bound needs n >= 1 (ln ln d_0 is undefined)".into()));
    }
    let l = ln_degree(&first_special_primes(n));
    let lhs = 2.0 * n as f64 * std::f64::consts::LN_2;
    let rhs = 0.3 * l / l.ln();
    Ok(FaceBound {
        n,
        nu: BigUint::one() << (2 * n),
        comparison: rhs.exp(),
        holds: lhs >= rhs * (1.0 + MARGIN) + MARGIN,
        ratio: 2.0 * n as f64 * l.ln() / l,
    })
}

/// Prime factors of a squarefree `n`, or an error.
pub fn squarefree_factors(n: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return Err(Error::NotSquarefree(n));
            }
            out.push(d);
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    Ok(out)
}

/// Genus of `X₀(N)` for squarefree `N` given by its distinct prime factors.
pub fn genus_from_primes(primes: &[u64]) -> BigInt {
    let mu: BigInt = primes.iter().map(|&p| BigInt::from(p + 1)).product();
    let nu2: BigInt = primes.iter().map(|&p| BigInt::from(1 + residue_symbol(-4, p) as i64)).product();
    let nu3: BigInt = primes.iter().map(|&p| BigInt::from(1 + residue_symbol(-3, p) as i64)).product();
    let cusps = BigInt::one() << primes.len();
    let twelve_g: BigInt = BigInt::from(12) + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
    assert!((&twelve_g % BigInt::from(12)).is_zero() && !twelve_g.is_negative(), "genus formula gave 12g = {twelve_g}");
    twelve_g / 12
}

pub fn genus_gamma0(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Invalid(format!("level {n} must exceed 1")));
    }
    Ok(genus_from_primes(&squarefree_factors(n)?).to_u64().expect("genus fits u64"))
}

#[derive(Clone, Debug)]
pub struct BettiBound {
    pub n: usize,
    pub level: BigUint,
    pub genus: BigInt,
    /// `(5/7)·g₀(N_n)`.
    pub new7: BigRational,
    /// `g₀(N_n) − 2·g₀(N_n / 7)`, the dimension of the 7-new subspace.
    pub new7_exact: BigInt,
    /// `(√d_n − 13·2ⁿ)/12`, a lower bound for the genus.
    pub intermediate: BigRational,
    /// `(5/84)(√d_n − 13·2ⁿ)`.
    pub betti: BigRational,
}

impl BettiBound {
    pub fn new7_is_integral(&self) -> bool {
        self.new7.is_integer()
    }
}

pub fn betti_lower_bound(n: usize) -> Result<BettiBound> {
    if n == 0 {
        return Err(Error::Invalid("Betti bound needs n >= 1".into()));
    }
    let ps = first_special_primes(n);
    let mut with7 = vec![7];
    with7.extend(&ps);
    let level: BigUint = with7.iter().map(|&p| BigUint::from(p)).product();
    let genus = genus_from_primes(&with7);
    let new7_exact = &genus - 2 * genus_from_primes(&ps);
    let root: BigInt = ps.iter().map(|&p| BigInt::from(p + 1)).product();
    let gap = root - BigInt::from(13) * (BigInt::one() << n);
    let rat = |num: BigInt, den: i64| BigRational::new(num, BigInt::from(den));
    Ok(BettiBound {
        n,
        level,
        new7: rat(5 * &genus, 7),
        genus,
        new7_exact,
        intermediate: rat(gap.clone(), 12),
        betti: rat(5 * gap, 84),
    })
}

/// Faces of the norm ball of the `n`-th Whitehead cover.
pub fn whitehead_faces(n: u32) -> Result<u64> {
    if n == 0 || n > 62 {
        return Err(Error::Invalid(format!("whitehead face count needs 1 <= n <= 62, got {n}")));
    }
    Ok(1 << (n + 1))
}

#[derive(Clone, Debug)]
pub struct TowerRow {
    pub n: usize,
    pub primes: Vec<u64>,
    pub degree: BigUint,
    pub faces: FaceBound,
    pub betti: BettiBound,
}

/// Rows for levels `1..=n`.
#[derive(Clone, Debug)]
pub struct TowerReport {
    pub rows: Vec<TowerRow>,
}

pub fn tower_report(n: usize) -> Result<TowerReport> {
    let ps = first_special_primes(n);
    let rows = (1..=n)
        .map(|k| {
            Ok(TowerRow {
                n: k,
                primes: ps[..k].to_vec(),
                degree: tower_degree(k),
                faces: face_bound(k)?,
                betti: betti_lower_bound(k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TowerReport { rows })
}

impl fmt::Display for TowerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n\tprimes\td_n\tnu_lower\tface_bound\tbound_holds\tdegree_ratio\tlevel\tgenus\tnew7\tnew7_exact\tgenus_lower\tbetti_lower")?;
        for r in &self.rows {
            let ps: Vec<String> = r.primes.iter().map(u64::to_string).collect();
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{:.6}\t{}\t{:.6}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.n,
                ps.join(","),
                r.degree,
                r.faces.nu,
                r.faces.comparison,
                if r.faces.holds { "yes" } else { "no" },
                r.faces.ratio,
                r.betti.level,
                r.betti.genus,
                r.betti.new7,
                r.betti.new7_exact,
                r.betti.intermediate,
                r.betti.betti,
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Elliptic points and cusps counted directly, independent of symbols.
    fn genus_oracle(n: u64) -> i64 {
        let roots = |f: &dyn Fn(u64) -> u64| (0..n).filter(|&x| f(x) % n == 0).count() as i64;
        let nu2 = roots(&|x| x * x + 1);
        let nu3 = roots(&|x| x * x + x + 1);
        let mut mu = n as i64;
        let mut m = 0;
        for p in 2..=n {
            if n % p == 0 && (2..p).all(|d| p % d != 0) {
                mu = mu / p as i64 * (p as i64 + 1);
                m += 1;
            }
        }
        let twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * (1 << m);
        assert_eq!(twelve_g % 12, 0);
        twelve_g / 12
    }

    #[test]
    fn degrees() {
        assert_eq!(tower_degree(0), BigUint::one());
        assert_eq!(tower_degree(1), BigUint::from(196u32));
        assert_eq!(tower_degree(2), BigUint::from(78400u32));
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus_gamma0(11), Ok(1));
        assert_eq!(genus_gamma0(91), Ok(7));
        assert_eq!(genus_gamma0(2), Ok(0));
        assert_eq!(genus_gamma0(12), Err(Error::NotSquarefree(12)));
        for n in [2, 3, 6, 14, 15, 30, 77, 91, 105, 210, 1001, 1365] {
            assert_eq!(genus_gamma0(n).unwrap() as i64, genus_oracle(n), "N = {n}");
        }
    }

    #[test]
    fn face_bounds() {
        assert!(face_bound(0).is_err());
        assert_eq!(face_bound(3).unwrap().nu, BigUint::from(64u32));
        for n in 1..=50 {
            assert!(face_bound(n).unwrap().holds, "n = {n}");
        }
    }

    #[test]
    fn betti_first_level() {
        let b = betti_lower_bound(1).unwrap();
        assert_eq!(b.level, BigUint::from(91u32));
        assert_eq!(b.genus, BigInt::from(7));
        assert_eq!(b.new7, BigRational::from_integer(5.into()));
        assert_eq!(b.intermediate, BigRational::from_integer((-1).into()));
        assert!(b.intermediate <= BigRational::from_integer(b.genus.clone()));
    }

    #[test]
    fn whitehead_counts() {
        assert_eq!(whitehead_faces(1), Ok(4));
        assert_eq!(whitehead_faces(2), Ok(8));
    }

    #[test]
    fn report_shape() {
        let r = tower_report(2).unwrap().to_string();
        let lines: Vec<&str> = r.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("2\t13,19\t78400\t16\t"));
    }
}
