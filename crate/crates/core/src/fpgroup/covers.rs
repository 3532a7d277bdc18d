//! Regular covers with finite abelian deck group, found through H₁.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::exactalg::{smith_normal_form, AbelianGroup};

use super::coset::CosetTable;
use super::presentation::Presentation;
use super::schreier::{cover_homology, reidemeister_schreier};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub table: CosetTable,
    pub homology: AbelianGroup,
}

/// Images of the generators under every surjection `π₁ → ∏ ℤ/n_k`, one
/// per kernel. Each image is a vector of residues.
pub fn abelian_quotients(p: &Presentation, moduli: &[u64]) -> Vec<CosetTable> {
    assert!(moduli.iter().all(|&n| n >= 1));
    let ng = p.ngens();
    let snf = smith_normal_form(&p.relation_matrix());
    let diag = snf.diagonal();
    // cyclic factors of H₁ in the coordinates given by V
    let factors: Vec<(usize, BigInt)> = (0..ng)
        .map(|i| (i, diag.get(i).cloned().unwrap_or_else(BigInt::zero)))
        .filter(|(_, d)| *d != BigInt::from(1))
        .collect();
    let size: u64 = moduli.iter().product();
    // admissible images per factor
    let options: Vec<Vec<Vec<u64>>> = factors
        .iter()
        .map(|(_, d)| {
            all_elements(moduli)
                .into_iter()
                .filter(|a| {
                    d.is_zero()
                        || a.iter().zip(moduli).all(|(&x, &n)| (d * BigInt::from(x)).mod_floor(&BigInt::from(n)).is_zero())
                })
                .collect()
        })
        .collect();
    let v = &snf.v;
    let mut seen: BTreeSet<CosetTable> = BTreeSet::new();
    let mut choice = vec![0usize; factors.len()];
    loop {
        let gen_images: Vec<Vec<u64>> = (0..ng)
            .map(|j| {
                moduli
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| {
                        let nn = BigInt::from(n);
                        let s = factors.iter().zip(&choice).enumerate().fold(BigInt::zero(), |s, (f, ((i, _), &c))| {
                            s + v.get(j, *i) * BigInt::from(options[f][c][k])
                        });
                        s.mod_floor(&nn).to_u64().unwrap()
                    })
                    .collect()
            })
            .collect();
        if let Some(t) = translation_table(&gen_images, moduli, size) {
            seen.insert(t.standardize());
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return seen.into_iter().collect();
            }
            choice[pos] += 1;
            if choice[pos] < options[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn all_elements(moduli: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &n in moduli {
        out = out.into_iter().flat_map(|v| (0..n).map(move |x| {
            let mut w = v.clone();
            w.push(x);
            w
        })).collect();
    }
    out
}

fn encode(x: &[u64], moduli: &[u64]) -> usize {
    x.iter().zip(moduli).fold(0usize, |acc, (&a, &n)| acc * n as usize + a as usize)
}

/// Translation action of the generator images; `None` unless transitive.
fn translation_table(images: &[Vec<u64>], moduli: &[u64], size: u64) -> Option<CosetTable> {
    let elems = all_elements(moduli);
    let perms: Vec<Vec<u32>> = images
        .iter()
        .map(|img| {
            elems
                .iter()
                .map(|x| {
                    let y: Vec<u64> = x.iter().zip(img).zip(moduli).map(|((a, b), n)| (a + b) % n).collect();
                    encode(&y, moduli) as u32
                })
                .collect()
        })
        .collect();
    let t = CosetTable::from_raw(size as usize, perms).ok()?;
    if t.orbits().len() == 1 {
        Some(t)
    } else {
        None
    }
}

pub fn enumerate_regular_covers(p: &Presentation, moduli: &[u64]) -> Vec<Cover> {
    let tables = abelian_quotients(p, moduli);
    tables
        .into_par_iter()
        .map(|table| {
            let homology = reidemeister_schreier(p, &table).presentation.abelianization();
            Cover { table, homology }
        })
        .collect()
}

/// One cover per kernel of a surjection `H₁ → ℤ/n`.
pub fn enumerate_cyclic_covers(p: &Presentation, n: u64) -> Vec<Cover> {
    enumerate_regular_covers(p, &[n])
}

/// Tower `B ← C ← X_i ← M`: `C` the unique regular cover with deck group
/// `moduli`, `X_i` the cyclic `n`-fold covers of `C` with homology `target`
/// (as subgroups of `B`), and `M` their intersection.
#[derive(Clone, Debug)]
pub struct CoverChain {
    pub c: Cover,
    pub cyclic: Vec<Cover>,
    /// Tables over `B` of the covers of `C` matching `target`.
    pub selected: Vec<CosetTable>,
    pub m: CosetTable,
    pub m_homology: AbelianGroup,
}

pub fn cover_chain(b: &Presentation, moduli: &[u64], n: u64, target: &AbelianGroup) -> Result<CoverChain> {
    let mut cs = enumerate_regular_covers(b, moduli);
    if cs.len() != 1 {
        return Err(Error::Invalid(format!("expected one regular cover with deck group {moduli:?}, found {}", cs.len())));
    }
    let c = cs.remove(0);
    let sc = reidemeister_schreier(b, &c.table);
    let cyclic = enumerate_cyclic_covers(&sc.presentation, n);
    let selected: Vec<CosetTable> = cyclic.iter().filter(|x| &x.homology == target).map(|x| sc.induce(&x.table)).collect();
    let Some((first, rest)) = selected.split_first() else {
        return Err(Error::Invalid(format!("no cyclic cover of C has homology {target}")));
    };
    let m = rest.iter().fold(first.clone(), |acc, t| acc.intersect(t));
    let m_homology = cover_homology(b, &m);
    Ok(CoverChain { c, cyclic, selected, m, m_homology })
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return 0;
            }
            result = -result;
        }
        f += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Number of subgroups of `H` with quotient `ℤ/n`, by Möbius inversion over
/// homomorphism counts `|Hom(H, ℤ/m)| = ∏ gcd(d_i, m)`.
pub fn count_cyclic_quotients(h: &AbelianGroup, n: u64) -> u64 {
    let homs = |m: u64| -> i128 {
        let mut c: i128 = (m as i128).pow(h.rank as u32);
        for t in &h.torsion {
            c *= (t.mod_floor(&BigInt::from(m)).to_u64().unwrap()).gcd(&m) as i128;
        }
        c
    };
    let surj: i128 = (1..=n).filter(|m| n % m == 0).map(|m| mobius(n / m) as i128 * homs(m)).sum();
    (surj / euler_phi(n) as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_rank_one() {
        let p = Presentation::free(1);
        let covers = enumerate_cyclic_covers(&p, 4);
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].homology, AbelianGroup::new(1, &[]));
    }

    #[test]
    fn torus_counts() {
        let p = Presentation::parse("pres v1\ngens a b\nrel abAB\n").unwrap();
        for n in 2..=6 {
            let covers = enumerate_cyclic_covers(&p, n);
            assert_eq!(covers.len() as u64, count_cyclic_quotients(&p.abelianization(), n));
        }
    }

    #[test]
    fn klein_four_quotients() {
        let p = Presentation::parse("pres v1\ngens a b\nrel a^2\nrel b^2\n").unwrap();
        let covers = enumerate_regular_covers(&p, &[2, 2]);
        assert_eq!(covers.len(), 1);
        assert_eq!(covers[0].table.degree(), 4);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(7), -1);
    }
}
