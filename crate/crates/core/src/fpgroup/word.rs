use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A freely reduced word. Letter `k > 0` is generator `k - 1`, `-k` its inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            debug_assert!(l != 0);
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(index: usize) -> Self {
        Word(vec![index as i32 + 1])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        Word::new((0..k.unsigned_abs()).flat_map(|_| base.0.iter().copied()))
    }

    /// Removes cancelling first/last letter pairs.
    pub fn cyclically_reduced(&self) -> Word {
        let w = &self.0;
        let (mut i, mut j) = (0, w.len());
        while j - i >= 2 && w[i] == -w[j - 1] {
            i += 1;
            j -= 1;
        }
        Word(w[i..j].to_vec())
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word::new(v)
    }

    /// Lexicographically least rotation of the word or its inverse.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclically_reduced();
        let inv = w.inverse();
        let mut best = w.clone();
        for cand in [&w, &inv] {
            for k in 0..cand.len() {
                let r = cand.rotate(k);
                if key(&r) < key(&best) {
                    best = r;
                }
            }
        }
        best
    }

    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut s = vec![0i64; ngens];
        for &l in &self.0 {
            s[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        s
    }

    /// Occurrences of generator `g` (either sign).
    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.unsigned_abs() as usize == g + 1).count()
    }

    /// Replaces every occurrence of generator `g` by `image` (and `g⁻¹` by its inverse).
    pub fn substitute(&self, g: usize, image: &Word) -> Word {
        let inv = image.inverse();
        let gl = g as i32 + 1;
        Word::new(self.0.iter().flat_map(|&l| {
            if l == gl {
                image.0.clone()
            } else if l == -gl {
                inv.0.clone()
            } else {
                vec![l]
            }
        }))
    }

    /// Applies `f` to every letter's generator index, preserving signs.
    pub fn map_gens(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::new(self.0.iter().map(|&l| l.signum() * (f(l.unsigned_abs() as usize - 1) as i32 + 1)))
    }

    /// Renders with generator names; lowercase first letter marks the
    /// generator, the capitalized name its inverse, runs as `x^k`.
    pub fn format(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            let name = &names[l.unsigned_abs() as usize - 1];
            let tok = if l > 0 { name.clone() } else { capitalize(name) };
            let run = j - i;
            if run >= 3 {
                let _ = write!(out, "{tok}^{run}");
            } else {
                for _ in 0..run {
                    out.push_str(&tok);
                }
            }
            i = j;
        }
        out
    }

    /// Parses a word such as `aBAB(ab)^3 = b^2`.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let mut sides = text.split('=');
        let first = sides.next().unwrap_or("");
        let mut acc = Parser::new(first, names).parse_all()?;
        // `u = v = w` contributes u v^{-1} only for the first pair; chains are
        // handled by the caller splitting into separate relators.
        if let Some(rhs) = sides.next() {
            let r = Parser::new(rhs, names).parse_all()?;
            acc = acc.concat(&r.inverse());
        }
        if sides.next().is_some() {
            return Err(Error::Invalid("more than one `=` in a single word".into()));
        }
        Ok(acc)
    }
}

fn key(w: &Word) -> (usize, Vec<i64>) {
    // order letters a < A < b < B < ...
    (w.len(), w.0.iter().map(|&l| 2 * (l.unsigned_abs() as i64) + i64::from(l < 0)).collect())
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_ascii_uppercase().to_string() + c.as_str(),
        None => String::new(),
    }
}

/// Whether `s` is a legal generator name: lowercase letter then digits.
pub fn valid_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(f) if f.is_ascii_lowercase()) && c.all(|ch| ch.is_ascii_digit())
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(text: &str, names: &'a [String]) -> Self {
        Parser { chars: text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect(), pos: 0, names }
    }

    fn parse_all(mut self) -> Result<Word> {
        let w = self.sequence()?;
        if self.pos < self.chars.len() {
            return Err(Error::Invalid(format!("unbalanced `{}` at position {}", self.chars[self.pos], self.pos)));
        }
        Ok(w)
    }

    fn sequence(&mut self) -> Result<Word> {
        let mut acc = Word::empty();
        while self.pos < self.chars.len() && self.chars[self.pos] != ')' {
            let atom = self.atom()?;
            let atom = self.exponent(atom)?;
            acc = acc.concat(&atom);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Word> {
        let c = self.chars[self.pos];
        if c == '(' {
            self.pos += 1;
            let inner = self.sequence()?;
            if self.pos >= self.chars.len() || self.chars[self.pos] != ')' {
                return Err(Error::Invalid("unbalanced `(`".into()));
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c == '1' {
            self.pos += 1;
            return Ok(Word::empty());
        }
        if !c.is_ascii_alphabetic() {
            return Err(Error::Invalid(format!("unexpected `{c}`")));
        }
        let mut name = c.to_ascii_lowercase().to_string();
        self.pos += 1;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            name.push(self.chars[self.pos]);
            self.pos += 1;
        }
        let idx = self
            .names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::Invalid(format!("unknown generator `{name}`")))?;
        let w = Word::gen(idx);
        Ok(if c.is_ascii_uppercase() { w.inverse() } else { w })
    }

    fn exponent(&mut self, base: Word) -> Result<Word> {
        if self.pos < self.chars.len() && self.chars[self.pos] == '^' {
            self.pos += 1;
            let start = self.pos;
            if self.pos < self.chars.len() && self.chars[self.pos] == '-' {
                self.pos += 1;
            }
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let s: String = self.chars[start..self.pos].iter().collect();
            let k: i64 = s.parse().map_err(|_| Error::Invalid(format!("bad exponent `{s}`")))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn reduction() {
        assert_eq!(Word::new([1, 2, -2, -1, 1]), Word::new([1]));
        assert_eq!(Word::new([1, 2, -1]).cyclically_reduced(), Word::new([2]));
    }

    #[test]
    fn parse_syntax() {
        let n = ab();
        assert_eq!(Word::parse("abAB", &n).unwrap().letters(), &[1, 2, -1, -2]);
        assert_eq!(Word::parse("a^4", &n).unwrap().letters(), &[1, 1, 1, 1]);
        assert_eq!(Word::parse("(ab)^-1", &n).unwrap().letters(), &[-2, -1]);
        assert_eq!(Word::parse("b^2 = ab", &n).unwrap().letters(), &[2, -1]);
        assert!(Word::parse("ac", &n).is_err());
        assert!(Word::parse("(ab", &n).is_err());
        assert!(Word::parse("ab)", &n).is_err());
    }

    #[test]
    fn format_roundtrip() {
        let n = ab();
        let w = Word::parse("aBABaba^4baBAbabABA^4BAb", &n).unwrap();
        assert_eq!(w.format(&n), "aBABaba^4baBAbabABA^4BAb");
        assert_eq!(Word::parse(&w.format(&n), &n).unwrap(), w);
    }

    #[test]
    fn canonical_rotation() {
        let w = Word::new([2, 1, -2, -1]);
        assert_eq!(w.cyclic_canonical(), Word::new([1, 2, -1, -2]));
    }
}
