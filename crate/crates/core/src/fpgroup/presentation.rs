use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{abelian_invariants, AbelianGroup, IntMatrix};

use super::word::{valid_name, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Relators are cyclically reduced and empty ones dropped.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Self {
        let n = names.len() as i32;
        for r in &relators {
            assert!(r.letters().iter().all(|l| l.abs() <= n), "relator uses an undeclared generator");
        }
        let relators = relators.iter().map(|r| r.cyclically_reduced()).filter(|r| !r.is_empty()).collect();
        Presentation { names, relators }
    }

    /// Generators named `x1 .. xn`.
    pub fn with_numbered_gens(n: usize, relators: Vec<Word>) -> Self {
        Self::new(numbered_names(n), relators)
    }

    pub fn free(n: usize) -> Self {
        Self::new(default_names(n), Vec::new())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(|r| r.len()).sum()
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        Word::parse(text, &self.names)
    }

    /// Exponent-sum matrix, rows = relators, columns = generators.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.relators.iter().map(|r| r.exponent_sums(self.ngens())).collect();
        IntMatrix::from_rows(self.ngens(), &rows)
    }

    pub fn abelianization(&self) -> AbelianGroup {
        abelian_invariants(&self.relation_matrix())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut relators = Vec::new();
        let mut saw_header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let lineno = i + 1;
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match kw {
                "pres" => {
                    if rest.trim() != "v1" {
                        return Err(Error::parse(lineno, format!("unsupported version `{}`", rest.trim())));
                    }
                    saw_header = true;
                }
                "gens" => {
                    let ns: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
                    if let Some(bad) = ns.iter().find(|n| !valid_name(n)) {
                        return Err(Error::parse(lineno, format!("bad generator name `{bad}`")));
                    }
                    for (a, n) in ns.iter().enumerate() {
                        if ns[..a].contains(n) {
                            return Err(Error::parse(lineno, format!("duplicate generator `{n}`")));
                        }
                    }
                    names = Some(ns);
                }
                "rel" => {
                    let ns = names.as_ref().ok_or_else(|| Error::parse(lineno, "`rel` before `gens`"))?;
                    let parts: Vec<&str> = rest.split('=').collect();
                    if parts.len() == 1 {
                        relators.push(Word::parse(parts[0], ns).map_err(|e| Error::parse(lineno, e.to_string()))?);
                    } else {
                        // u = v = w gives u v^{-1}, v w^{-1}
                        for pair in parts.windows(2) {
                            let w = Word::parse(&format!("{}={}", pair[0], pair[1]), ns)
                                .map_err(|e| Error::parse(lineno, e.to_string()))?;
                            relators.push(w);
                        }
                    }
                }
                other => return Err(Error::parse(lineno, format!("unknown keyword `{other}`"))),
            }
        }
        if !saw_header {
            return Err(Error::parse(1, "missing `pres v1` header"));
        }
        let names = names.ok_or_else(|| Error::parse(0, "missing `gens` line"))?;
        Ok(Presentation::new(names, relators))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pres v1")?;
        writeln!(f, "gens {}", self.names.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel {}", r.format(&self.names))?;
        }
        Ok(())
    }
}

pub fn numbered_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// `a b c ...` for up to 26 generators, numbered names beyond.
pub fn default_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        numbered_names(n)
    }
}
