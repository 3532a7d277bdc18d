//! Permutations of the four vertices of a tetrahedron.

use std::fmt;

use crate::error::{Error, Result};

/// `p[i]` is the image of vertex `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn new(images: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return Err(Error::Invalid(format!("{images:?} is not a permutation of 0..4")));
            }
            seen[x as usize] = true;
        }
        Ok(Perm4(images))
    }

    /// The transposition of `a` and `b`.
    pub fn swap(a: usize, b: usize) -> Self {
        let mut p = [0, 1, 2, 3];
        p.swap(a, b);
        Perm4(p)
    }

    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in (0..4u8).filter(|&b| b != a) {
                for c in (0..4u8).filter(|&c| c != a && c != b) {
                    out.push(Perm4([a, b, c, 6 - a - b - c]));
                }
            }
        }
        out
    }

    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn inverse(self) -> Self {
        let mut inv = [0u8; 4];
        for i in 0..4 {
            inv[self.0[i] as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(self, other: Perm4) -> Self {
        Perm4([0, 1, 2, 3].map(|i| self.0[other.0[i] as usize]))
    }

    pub fn is_even(self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// Position in the lexicographic list of all 24 permutations.
    pub fn index(self) -> usize {
        Perm4::all().iter().position(|&p| p == self).unwrap()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let digits: Vec<u8> = text.bytes().map(|b| b.wrapping_sub(b'0')).collect();
        if digits.len() != 4 {
            return Err(Error::Invalid(format!("permutation {text:?} must have 4 digits")));
        }
        Perm4::new([digits[0], digits[1], digits[2], digits[3]])
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws() {
        let all = Perm4::all();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.is_even()).count(), 12);
        for &p in &all {
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
            for &q in &all {
                assert_eq!(p.compose(q).is_even(), p.is_even() == q.is_even());
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let p = Perm4::parse("2013").unwrap();
        assert_eq!(p.apply(0), 2);
        assert_eq!(p.to_string(), "2013");
        assert!(Perm4::parse("0012").is_err());
        assert!(Perm4::parse("012").is_err());
    }
}
