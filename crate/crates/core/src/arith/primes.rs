//! Primality, quadratic residue symbols, and the prime set of the tower.

use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; these bases suffice below 3.3·10²⁴, hence
/// for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: i64) -> Result<i8> {
    if p < 3 || p % 2 == 0 || !is_prime(p as u64) {
        return Err(Error::NotOddPrime(p));
    }
    let r = a.rem_euclid(p) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p as u64 - 1) / 2, p as u64) == 1 { 1 } else { -1 })
}

/// Kronecker-style symbols needed at 2 and 3 for elliptic-point counts.
pub(crate) fn residue_symbol(a: i64, p: u64) -> i8 {
    match (a, p) {
        (-4 | -1, 2) => 0,
        (-3, 2) => -1,
        (-3, 3) => 0,
        _ => legendre(a, p as i64).expect("odd prime"),
    }
}

pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            for j in (i * i..n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (0..n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// `p ∉ {2, 3, 7}` inert in `ℚ(√−7)` and split in `ℚ(√−3)`.
pub fn is_special(p: u64) -> bool {
    p > 3 && p != 7 && legendre(-3, p as i64) == Ok(1) && legendre(-7, p as i64) == Ok(-1)
}

/// Primes below `limit` in the set, in increasing order.
pub fn special_primes(limit: u64) -> Vec<u64> {
    primes_below(limit).into_iter().filter(|&p| is_special(p)).collect()
}

/// The first `n` primes of the set.
pub fn first_special_primes(n: usize) -> Vec<u64> {
    let mut limit = 128u64;
    loop {
        let ps = special_primes(limit);
        if ps.len() >= n {
            return ps[..n].to_vec();
        }
        limit *= 2;
    }
}

/// Fraction of primes below `limit` lying in the set.
pub fn special_density(limit: u64) -> f64 {
    let all = primes_below(limit);
    let special = all.iter().filter(|&&p| is_special(p)).count();
    special as f64 / all.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn miller_rabin_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_division(n), "{n}");
        }
        // strong pseudoprimes to several small bases
        for n in [3_215_031_751u64, 2_152_302_898_747, 3_474_749_660_383, 341_550_071_728_321] {
            assert!(!is_prime(n));
        }
        assert!(is_prime(18_446_744_073_709_551_557));
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(-1, 7), Ok(-1));
        assert_eq!(legendre(0, 11), Ok(0));
        assert_eq!(legendre(2, 7), Ok(1));
        assert!(legendre(3, 2).is_err());
        assert!(legendre(3, 9).is_err());
        // against squaring every residue
        for p in [5i64, 13, 31, 97] {
            for a in 0..p {
                let square = (1..p).any(|y| (y * y - a).rem_euclid(p) == 0);
                let want = if a == 0 { 0 } else if square { 1 } else { -1 };
                assert_eq!(legendre(a, p), Ok(want));
            }
        }
    }

    #[test]
    fn first_special() {
        assert_eq!(special_primes(80), vec![13, 19, 31, 61, 73]);
        assert!(!special_primes(1000).contains(&7));
        assert_eq!(first_special_primes(2), vec![13, 19]);
    }
}
