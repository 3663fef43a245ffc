//! The pairing map P_k : S^{2k}W → S^k(S²W), the ideal generated by the
//! image of P_{n+1}, and its action on Λ(V⊗W) through L_ij.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::exalg::Multivector;
use crate::linalg::{EchelonBasis, SparseRow};
use crate::rational::{self, Q};
use crate::spops::{SpAction, SpgGenerator, MAX_EXHAUSTIVE_GENERATORS};

pub const MAX_PAIRING_K: usize = 6;
pub const MAX_AMBIENT: u128 = 200_000;

/// A perfect matching of positions 0..2k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingSet(pub Vec<(usize, usize)>);

pub fn enumerate_pairings(k: usize) -> Result<Vec<PairingSet>> {
    guard("pairing size k", k as u128, MAX_PAIRING_K as u128)?;
    fn rec(free: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<PairingSet>) {
        if free.is_empty() {
            out.push(PairingSet(cur.clone()));
            return;
        }
        let a = free[0];
        for idx in 1..free.len() {
            let b = free[idx];
            let rest: Vec<usize> = free[1..]
                .iter()
                .enumerate()
                .filter(|&(i, _)| i + 1 != idx)
                .map(|(_, &x)| x)
                .collect();
            cur.push((a, b));
            rec(&rest, cur, out);
            cur.pop();
        }
    }
    let positions: Vec<usize> = (0..2 * k).collect();
    let mut out = Vec::new();
    rec(&positions, &mut Vec::new(), &mut out);
    Ok(out)
}

/// A monomial in the commuting symbols L_ij (i ≤ j), stored as a sorted list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SymMonomial(pub Vec<(usize, usize)>);

impl SymMonomial {
    pub fn new(mut symbols: Vec<(usize, usize)>) -> Self {
        for s in symbols.iter_mut() {
            if s.0 > s.1 {
                *s = (s.1, s.0);
            }
        }
        symbols.sort_unstable();
        SymMonomial(symbols)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &SymMonomial) -> SymMonomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().copied());
        SymMonomial::new(v)
    }

    /// All monomials of degree d in the symbols L_ij, 1 ≤ i ≤ j ≤ g.
    pub fn all_of_degree(g: usize, d: usize) -> Vec<SymMonomial> {
        let symbols: Vec<(usize, usize)> =
            (1..=g).flat_map(|i| (i..=g).map(move |j| (i, j))).collect();
        multisets(&symbols, d).into_iter().map(SymMonomial).collect()
    }
}

/// Multisets of size d drawn from `items`, as sorted lists.
pub fn multisets<T: Clone>(items: &[T], d: usize) -> Vec<Vec<T>> {
    fn rec<T: Clone>(items: &[T], start: usize, d: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            rec(items, i, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, 0, d, &mut Vec::new(), &mut out);
    out
}

pub fn multiset_count(kinds: usize, d: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..d as u128 {
        acc = acc * (kinds as u128 + i) / (i + 1);
    }
    acc
}

/// Element of S(S²W).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPolyElement {
    pub terms: BTreeMap<SymMonomial, Q>,
}

impl SymPolyElement {
    pub fn add_term(&mut self, m: SymMonomial, c: Q) {
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul_monomial(&self, m: &SymMonomial) -> SymPolyElement {
        let mut out = SymPolyElement::default();
        for (k, c) in &self.terms {
            out.add_term(k.mul(m), c.clone());
        }
        out
    }

    /// Sum of coefficients.
    pub fn coefficient_sum(&self) -> Q {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> Vec<(Vec<[usize; 2]>, String)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.0.iter().map(|&(i, j)| [i, j]).collect(), rational::to_string(c)))
            .collect()
    }
}

/// P_k(e_{i_1}, …, e_{i_2k}) = Σ over perfect matchings of Π L_{paired indices}.
pub fn p_map(k: usize, word: &[usize], g: usize) -> Result<SymPolyElement> {
    if word.len() != 2 * k {
        return Err(Error::IndexOutOfRange(format!(
            "word has length {} but P_{k} needs {}",
            word.len(),
            2 * k
        )));
    }
    if let Some(&bad) = word.iter().find(|&&i| i == 0 || i > g) {
        return Err(Error::IndexOutOfRange(format!("index {bad} outside 1..{g}")));
    }
    let mut out = SymPolyElement::default();
    for pairing in enumerate_pairings(k)? {
        let m = SymMonomial::new(pairing.0.iter().map(|&(a, b)| (word[a], word[b])).collect());
        out.add_term(m, Q::one());
    }
    Ok(out)
}

/// The even element P(L)·1 of Λ(V⊗W); P(L) acts on any x as this element wedged with x.
pub fn realize(action: &SpAction, p: &SymPolyElement) -> Result<Multivector> {
    let ctx = action.context();
    let mut out = Multivector::zero(ctx);
    for (m, c) in &p.terms {
        let mut v = Multivector::one(ctx);
        for &(i, j) in &m.0 {
            v = action.apply_generator(SpgGenerator::l(i, j), &v)?;
        }
        out = out.add(&v.scale(c))?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilationReport {
    pub n: usize,
    pub g: usize,
    /// Image of P_{n+1} acts as zero on every basis monomial.
    pub annihilates: bool,
    pub words_checked: usize,
    /// A word of length 2n whose P_n image is nonzero on the unit, if any.
    pub lower_witness: Option<Vec<usize>>,
}

/// Whether every image P_k(w) acts as zero on every basis monomial.
pub fn image_annihilates(action: &SpAction, k: usize) -> Result<(bool, usize, Option<Vec<usize>>)> {
    let ctx = action.context();
    guard(
        "exhaustive basis check 2ng",
        ctx.num_generators() as u128,
        MAX_EXHAUSTIVE_GENERATORS as u128,
    )?;
    let letters: Vec<usize> = (1..=ctx.g).collect();
    let words = multisets(&letters, 2 * k);
    let basis = ctx.basis()?;
    let results: Result<Vec<Option<Vec<usize>>>> = words
        .par_iter()
        .map(|w| {
            let e = realize(action, &p_map(k, w, ctx.g)?)?;
            for m in &basis {
                let x = Multivector::monomial(ctx, *m, Q::one());
                if !e.wedge(&x)?.is_zero() {
                    return Ok(Some(w.clone()));
                }
            }
            Ok(None)
        })
        .collect();
    let results = results?;
    let witness = results.iter().flatten().next().cloned();
    Ok((witness.is_none(), words.len(), witness))
}

pub fn realize_and_check_annihilation_with(action: &SpAction) -> Result<AnnihilationReport> {
    let ctx = action.context();
    let (annihilates, words_checked, _) = image_annihilates(action, ctx.n + 1)?;
    let (_, _, lower_witness) = image_annihilates(action, ctx.n)?;
    Ok(AnnihilationReport {
        n: ctx.n,
        g: ctx.g,
        annihilates,
        words_checked,
        lower_witness,
    })
}

pub fn realize_and_check_annihilation(n: usize, g: usize) -> Result<AnnihilationReport> {
    realize_and_check_annihilation_with(&SpAction::standard(n, g)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedQuotientEntry {
    pub degree: usize,
    pub ambient: usize,
    pub rank: usize,
    pub quotient: usize,
}

pub type GradedQuotientReport = Vec<GradedQuotientEntry>;

/// Graded dimensions of S(S²W) modulo the ideal generated by the image of P_{n+1}.
pub fn quotient_graded_dims(n: usize, g: usize, max_degree: usize) -> Result<GradedQuotientReport> {
    let k = n + 1;
    let letters: Vec<usize> = (1..=g).collect();
    let symbols = g * (g + 1) / 2;
    for d in 0..=max_degree {
        guard("ambient monomials per degree", multiset_count(symbols, d), MAX_AMBIENT)?;
    }
    guard("P words", multiset_count(g, 2 * k), MAX_AMBIENT)?;
    let generators: Vec<SymPolyElement> = multisets(&letters, 2 * k)
        .iter()
        .map(|w| p_map(k, w, g))
        .collect::<Result<_>>()?;
    (0..=max_degree)
        .into_par_iter()
        .map(|d| {
            let ambient = SymMonomial::all_of_degree(g, d);
            let rank = if d < k {
                0
            } else {
                let index: BTreeMap<&SymMonomial, usize> =
                    ambient.iter().enumerate().map(|(i, m)| (m, i)).collect();
                let mut basis = EchelonBasis::new();
                for m in SymMonomial::all_of_degree(g, d - k) {
                    for p in &generators {
                        let rel = p.mul_monomial(&m);
                        basis.insert(SparseRow::from_rationals(
                            rel.terms.iter().map(|(mm, c)| (index[mm], c.clone())),
                        ));
                        if basis.rank() == ambient.len() {
                            break;
                        }
                    }
                }
                basis.rank()
            };
            Ok(GradedQuotientEntry {
                degree: d,
                ambient: ambient.len(),
                rank,
                quotient: ambient.len() - rank,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn pairing_counts() {
        assert_eq!(enumerate_pairings(1).unwrap().len(), 1);
        assert_eq!(enumerate_pairings(2).unwrap().len(), 3);
        assert_eq!(enumerate_pairings(3).unwrap().len(), 15);
        assert!(enumerate_pairings(7).is_err());
    }

    #[test]
    fn p2_example() {
        let p = p_map(2, &[1, 1, 2, 2], 2).unwrap();
        let mut expect = SymPolyElement::default();
        expect.add_term(SymMonomial::new(vec![(1, 1), (2, 2)]), q(1));
        expect.add_term(SymMonomial::new(vec![(1, 2), (1, 2)]), q(2));
        assert_eq!(p, expect);
        assert_eq!(p_map(2, &[1, 2, 1, 2], 2).unwrap(), expect);
        assert_eq!(p_map(1, &[2, 1], 2).unwrap().terms.len(), 1);
    }

    #[test]
    fn annihilation_small() {
        let r = realize_and_check_annihilation(1, 1).unwrap();
        assert!(r.annihilates);
        assert_eq!(r.lower_witness, Some(vec![1, 1]));
        assert!(realize_and_check_annihilation(1, 2).unwrap().annihilates);
    }

    #[test]
    fn quotient_small() {
        let r = quotient_graded_dims(1, 1, 3).unwrap();
        let dims: Vec<usize> = r.iter().map(|e| e.quotient).collect();
        assert_eq!(dims, vec![1, 1, 0, 0]);
        let r = quotient_graded_dims(1, 2, 4).unwrap();
        let dims: Vec<usize> = r.iter().map(|e| e.quotient).collect();
        assert_eq!(dims, vec![1, 3, 1, 0, 0]);
    }
}
