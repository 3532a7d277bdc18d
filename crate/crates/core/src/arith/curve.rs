//! Elliptic curves in long Weierstrass form and their Frobenius traces.

use crate::error::{Error, Result};

use super::primes::is_prime;

/// `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EllipticCurve {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
}

impl EllipticCurve {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<EllipticCurve> {
        let e = EllipticCurve { a1, a2, a3, a4, a6 };
        if e.discriminant() == 0 {
            return Err(Error::Invalid("singular Weierstrass equation".into()));
        }
        Ok(e)
    }

    /// The CM curve `y² + xy = x³ − x² − 2x − 1` of conductor 49.
    pub fn cm49() -> EllipticCurve {
        EllipticCurve { a1: 1, a2: -1, a3: 0, a4: -2, a6: -1 }
    }

    pub fn discriminant(&self) -> i128 {
        let (a1, a2, a3, a4, a6) = (self.a1 as i128, self.a2 as i128, self.a3 as i128, self.a4 as i128, self.a6 as i128);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    fn check_prime(&self, p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if self.discriminant().rem_euclid(p as i128) == 0 {
            return Err(Error::BadPrime(p));
        }
        Ok(())
    }

    fn reduce(&self, p: u64) -> [u64; 5] {
        let r = |a: i64| a.rem_euclid(p as i64) as u64;
        [r(self.a1), r(self.a2), r(self.a3), r(self.a4), r(self.a6)]
    }

    /// Affine points over `𝔽_p` by testing every `(x, y)`.
    pub fn count_affine_exhaustive(&self, p: u64) -> Result<u64> {
        self.check_prime(p)?;
        let [a1, a2, a3, a4, a6] = self.reduce(p);
        let mut count = 0;
        for x in 0..p {
            let rhs = (((x + a2) % p * x + a4) % p * x + a6) % p;
            for y in 0..p {
                if (y * y + (a1 * x + a3) % p * y) % p == rhs {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Affine points over `𝔽_p`, solving the quadratic in `y` with a table of
    /// square roots counts.
    pub fn count_affine(&self, p: u64) -> Result<u64> {
        if p == 2 {
            return self.count_affine_exhaustive(p);
        }
        self.check_prime(p)?;
        let [a1, a2, a3, a4, a6] = self.reduce(p);
        let mut roots = vec![0u64; p as usize];
        for z in 0..p {
            roots[(z * z % p) as usize] += 1;
        }
        let mut count = 0;
        for x in 0..p {
            let rhs = (((x + a2) % p * x + a4) % p * x + a6) % p;
            let b = (a1 * x + a3) % p;
            let disc = (b * b + 4 * rhs) % p;
            count += roots[disc as usize];
        }
        Ok(count)
    }

    /// `a_p = p + 1 − #E(𝔽_p)`.
    pub fn ap(&self, p: u64) -> Result<i64> {
        let a = p as i64 - self.count_affine(p)? as i64;
        assert!(((a * a) as u64) <= 4 * p, "Hasse bound violated at p = {p}: a_p = {a}");
        Ok(a)
    }

    pub fn ap_exhaustive(&self, p: u64) -> Result<i64> {
        Ok(p as i64 - self.count_affine_exhaustive(p)? as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cm_curve_invariants() {
        let e = EllipticCurve::cm49();
        assert_eq!(e.discriminant(), -343);
        assert!(matches!(e.ap(7), Err(Error::BadPrime(7))));
        assert!(EllipticCurve::new(0, 0, 0, 0, 0).is_err());
    }

    #[test]
    fn small_traces() {
        let e = EllipticCurve::cm49();
        // 4 points over F_3 and 2 over F_2, counting infinity
        assert_eq!(e.count_affine_exhaustive(3).unwrap() + 1, 4);
        assert_eq!(e.count_affine_exhaustive(2).unwrap() + 1, 2);
        assert_eq!(e.ap(3).unwrap(), 0);
        assert_eq!(e.ap(2).unwrap(), 1);
    }

    #[test]
    fn table_count_matches_exhaustive() {
        let curves = [EllipticCurve::cm49(), EllipticCurve::new(0, 0, 1, -1, 0).unwrap(), EllipticCurve::new(1, 0, 1, 4, -6).unwrap()];
        for e in curves {
            for p in crate::arith::primes::primes_below(300) {
                match (e.ap(p), e.ap_exhaustive(p)) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b, "{e:?} p={p}"),
                    (Err(_), Err(_)) => {}
                    other => panic!("{other:?}"),
                }
            }
        }
    }
}
