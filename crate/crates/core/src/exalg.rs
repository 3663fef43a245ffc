//! Sparse exterior algebra Λ(V⊗W) with dim V = 2n and dim W = g.
//!
//! A monomial is a bitmask over the 2ng generators v^I_i; the generator with
//! column i and fiber I sits at bit (i-1)·2n + (I-1), so ascending bit order
//! is the lexicographic (column, fiber) order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{self, Q};

/// The pair (n, g): V has dimension 2n, W has dimension g.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Context {
    pub n: usize,
    pub g: usize,
}

impl Context {
    pub fn new(n: usize, g: usize) -> Result<Self> {
        if 2 * n * g > 64 {
            return Err(Error::GuardExceeded {
                what: "generator count 2ng".into(),
                requested: (2 * n * g) as u128,
                limit: 64,
            });
        }
        Ok(Context { n, g })
    }

    pub fn dim_v(&self) -> usize {
        2 * self.n
    }

    pub fn num_generators(&self) -> usize {
        2 * self.n * self.g
    }

    /// Number of basis monomials, 2^{2ng}.
    pub fn basis_size(&self) -> u128 {
        1u128 << self.num_generators()
    }

    pub fn check(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch {
                left_n: self.n,
                left_g: self.g,
                right_n: other.n,
                right_g: other.g,
            })
        }
    }

    pub fn bit(&self, id: GeneratorId) -> Result<usize> {
        if id.column == 0 || id.column > self.g || id.fiber == 0 || id.fiber > self.dim_v() {
            return Err(Error::IndexOutOfRange(format!(
                "generator ({}, {}) outside g={}, 2n={}",
                id.column,
                id.fiber,
                self.g,
                self.dim_v()
            )));
        }
        Ok((id.column - 1) * self.dim_v() + id.fiber - 1)
    }

    pub fn generator_at(&self, bit: usize) -> GeneratorId {
        GeneratorId {
            column: bit / self.dim_v() + 1,
            fiber: bit % self.dim_v() + 1,
        }
    }

    /// Every basis monomial, in bitmask order.
    pub fn basis(&self) -> Result<Vec<Monomial>> {
        crate::error::guard("basis size 2^(2ng)", self.basis_size(), 1 << 20)?;
        Ok((0..(1u64 << self.num_generators())).map(Monomial).collect())
    }

    /// Basis monomials with the given per-column degrees.
    pub fn basis_of_degree(&self, deg: &MultiDegree) -> Vec<Monomial> {
        let d = self.dim_v();
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(self.g);
        for &p in &deg.degrees {
            cols.push(
                (0..(1u64 << d))
                    .filter(|m| m.count_ones() as usize == p)
                    .collect(),
            );
        }
        let mut out = vec![0u64];
        for (i, col) in cols.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * col.len());
            for &m in &out {
                for &c in col {
                    next.push(m | (c << (i * d)));
                }
            }
            out = next;
        }
        let mut out: Vec<Monomial> = out.into_iter().map(Monomial).collect();
        out.sort();
        out
    }
}

/// The generator v^I_i, with column i in 1..=g and fiber I in 1..=2n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub column: usize,
    pub fiber: usize,
}

impl GeneratorId {
    pub fn new(column: usize, fiber: usize) -> Self {
        GeneratorId { column, fiber }
    }
}

/// A wedge of distinct generators in ascending order; 0 is the unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub u64);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.0, other.0);
        if a == b {
            return Ordering::Equal;
        }
        let k = (a ^ b).trailing_zeros();
        let above = |m: u64| if k >= 63 { 0 } else { m >> (k + 1) };
        if a & (1 << k) != 0 {
            if above(b) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if above(a) != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, bit: usize) -> bool {
        self.0 >> bit & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(b)
            }
        })
    }

    /// `self ∧ other` as a signed monomial, or `None` when they share a generator.
    pub fn wedge(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for y in other.bits() {
            swaps += if y >= 63 { 0 } else { (self.0 >> (y + 1)).count_ones() };
        }
        Some((Monomial(self.0 | other.0), swaps % 2 == 1))
    }

    /// Contraction by the generator at `bit`, with its sign.
    pub fn interior(&self, bit: usize) -> Option<(Monomial, bool)> {
        if !self.contains(bit) {
            return None;
        }
        let below = (self.0 & ((1u64 << bit) - 1)).count_ones();
        Some((Monomial(self.0 ^ (1 << bit)), below % 2 == 1))
    }

    pub fn multidegree(&self, ctx: &Context) -> MultiDegree {
        let d = ctx.dim_v();
        let mask = if d >= 64 { u64::MAX } else { (1u64 << d) - 1 };
        MultiDegree {
            degrees: (0..ctx.g)
                .map(|i| ((self.0 >> (i * d)) & mask).count_ones() as usize)
                .collect(),
        }
    }

    pub fn generators(&self, ctx: &Context) -> Vec<GeneratorId> {
        self.bits().map(|b| ctx.generator_at(b)).collect()
    }
}

/// Per-column degrees (p_1, …, p_g).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    pub degrees: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl MultiDegree {
    pub fn new(degrees: Vec<usize>) -> Self {
        MultiDegree { degrees }
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }

    pub fn parity(&self) -> Parity {
        if self.total() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// All degree tuples with entries in 0..=2n.
    pub fn all(ctx: &Context) -> Vec<MultiDegree> {
        let mut out = vec![Vec::new()];
        for _ in 0..ctx.g {
            out = out
                .into_iter()
                .flat_map(|v: Vec<usize>| {
                    (0..=ctx.dim_v()).map(move |p| {
                        let mut w = v.clone();
                        w.push(p);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(MultiDegree::new).collect()
    }
}

/// Exact element of Λ(V⊗W); zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    ctx: Context,
    terms: BTreeMap<Monomial, Q>,
}

impl Multivector {
    pub fn zero(ctx: Context) -> Self {
        Multivector {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: Context) -> Self {
        Self::monomial(ctx, Monomial::ONE, Q::one())
    }

    pub fn monomial(ctx: Context, m: Monomial, coef: Q) -> Self {
        let mut v = Self::zero(ctx);
        v.add_term(m, coef);
        v
    }

    pub fn generator(ctx: Context, id: GeneratorId) -> Result<Self> {
        let b = ctx.bit(id)?;
        Ok(Self::monomial(ctx, Monomial(1 << b), Q::one()))
    }

    /// Wedge of the listed generators, in the order given.
    pub fn from_generators(ctx: Context, ids: &[GeneratorId]) -> Result<Self> {
        let mut acc = Self::one(ctx);
        for &id in ids {
            acc = acc.wedge(&Self::generator(ctx, id)?)?;
        }
        Ok(acc)
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, coef: Q) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, coef);
            }
        }
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.ctx.check(&other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Multivector {
        if s.is_zero() {
            return Self::zero(self.ctx);
        }
        Multivector {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.ctx.check(&other.ctx)?;
        let mut out = Self::zero(self.ctx);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((m, neg)) = a.wedge(b) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn interior(&self, id: GeneratorId) -> Result<Multivector> {
        let bit = self.ctx.bit(id)?;
        let mut out = Self::zero(self.ctx);
        for (a, c) in &self.terms {
            if let Some((m, neg)) = a.interior(bit) {
                out.add_term(m, if neg { -c.clone() } else { c.clone() });
            }
        }
        Ok(out)
    }

    pub fn grade_split(&self) -> BTreeMap<MultiDegree, Multivector> {
        let mut out: BTreeMap<MultiDegree, Multivector> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.multidegree(&self.ctx))
                .or_insert_with(|| Self::zero(self.ctx))
                .add_term(*m, c.clone());
        }
        out
    }

    /// Homogeneous total degree, if every term has the same one.
    pub fn total_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn to_json(&self) -> MultivectorJson {
        MultivectorJson {
            n: self.ctx.n,
            g: self.ctx.g,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    mono: m
                        .generators(&self.ctx)
                        .into_iter()
                        .map(|id| [id.column, id.fiber])
                        .collect(),
                    coef: rational::to_string(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &MultivectorJson) -> Result<Multivector> {
        let ctx = Context::new(j.n, j.g)?;
        let mut out = Self::zero(ctx);
        for t in &j.terms {
            let ids: Vec<GeneratorId> = t.mono.iter().map(|p| GeneratorId::new(p[0], p[1])).collect();
            let c = rational::parse(&t.coef)?;
            let term = Self::from_generators(ctx, &ids)?.scale(&c);
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub mono: Vec<[usize; 2]>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub n: usize,
    pub g: usize,
    pub terms: Vec<TermJson>,
}

/// A nondegenerate antisymmetric form ε on V with its inverse ε^{-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
    eps: Vec<Vec<Q>>,
    inv: Vec<Vec<Q>>,
}

impl SymplecticForm {
    /// ε = [[0, I_n], [-I_n, 0]].
    pub fn standard(n: usize) -> Self {
        let d = 2 * n;
        let mut eps = vec![vec![Q::zero(); d]; d];
        for i in 0..n {
            eps[i][i + n] = Q::one();
            eps[i + n][i] = -Q::one();
        }
        let inv = eps
            .iter()
            .map(|row| row.iter().map(|x| -x.clone()).collect())
            .collect();
        SymplecticForm { n, eps, inv }
    }

    pub fn new(eps: Vec<Vec<Q>>) -> Result<Self> {
        let d = eps.len();
        if d % 2 != 0 || eps.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidForm("matrix must be square of even size".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if eps[i][j] != -eps[j][i].clone() {
                    return Err(Error::InvalidForm(format!("not antisymmetric at ({},{})", i + 1, j + 1)));
                }
            }
        }
        let inv = linalg::invert(&eps).ok_or_else(|| Error::InvalidForm("degenerate".into()))?;
        Ok(SymplecticForm { n: d / 2, eps, inv })
    }

    /// Builds a form without validation. Used to probe how the checks react to a corrupted ε.
    pub fn new_unchecked(eps: Vec<Vec<Q>>, inv: Vec<Vec<Q>>) -> Self {
        SymplecticForm {
            n: eps.len() / 2,
            eps,
            inv,
        }
    }

    /// Copy with the sign of the single entry ε_IJ (1-based) flipped, inverse untouched.
    pub fn with_flipped_entry(&self, i: usize, j: usize) -> Self {
        let mut eps = self.eps.clone();
        eps[i - 1][j - 1] = -eps[i - 1][j - 1].clone();
        Self::new_unchecked(eps, self.inv.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// ε_IJ with 1-based indices.
    pub fn lower(&self, i: usize, j: usize) -> &Q {
        &self.eps[i - 1][j - 1]
    }

    /// ε^IJ with 1-based indices.
    pub fn upper(&self, i: usize, j: usize) -> &Q {
        &self.inv[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.eps
    }

    pub fn inverse(&self) -> &[Vec<Q>] {
        &self.inv
    }

    /// Whether Σ_J ε^IJ ε_JK = δ^I_K holds exactly.
    pub fn round_trip_ok(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|k| {
                let s: Q = (0..d).map(|j| &self.inv[i][j] * &self.eps[j][k]).sum();
                s == if i == k { Q::one() } else { Q::zero() }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn ctx(n: usize, g: usize) -> Context {
        Context::new(n, g).unwrap()
    }

    #[test]
    fn nilpotent_and_antisymmetric() {
        let c = ctx(1, 2);
        let v11 = Multivector::generator(c, GeneratorId::new(1, 1)).unwrap();
        let v21 = Multivector::generator(c, GeneratorId::new(1, 2)).unwrap();
        assert!(v11.wedge(&v11).unwrap().is_zero());
        assert_eq!(
            v21.wedge(&v11).unwrap(),
            v11.wedge(&v21).unwrap().scale(&q(-1))
        );
    }

    #[test]
    fn interior_examples() {
        let c = ctx(1, 1);
        let v1 = Multivector::generator(c, GeneratorId::new(1, 1)).unwrap();
        let v2 = Multivector::generator(c, GeneratorId::new(1, 2)).unwrap();
        assert_eq!(v1.interior(GeneratorId::new(1, 1)).unwrap(), Multivector::one(c));
        assert!(v1.interior(GeneratorId::new(1, 2)).unwrap().is_zero());
        let w = v1.wedge(&v2).unwrap();
        assert_eq!(w.interior(GeneratorId::new(1, 2)).unwrap(), v1.scale(&q(-1)));
    }

    #[test]
    fn monomial_order_is_lexicographic() {
        // {0,3} < {1} < {1,2} < {2}
        let ms = [Monomial(0b1001), Monomial(0b0010), Monomial(0b0110), Monomial(0b0100)];
        for w in ms.windows(2) {
            assert!(w[0] < w[1], "{:?} < {:?}", w[0], w[1]);
        }
        assert!(Monomial::ONE < Monomial(1));
        assert!(Monomial(0b1) < Monomial(0b11));
    }

    #[test]
    fn context_mismatch() {
        let a = Multivector::one(ctx(1, 1));
        let b = Multivector::one(ctx(1, 2));
        assert!(matches!(a.wedge(&b), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn standard_form_round_trip() {
        for n in 1..=3 {
            let f = SymplecticForm::standard(n);
            assert!(f.round_trip_ok());
            assert_eq!(SymplecticForm::new(f.matrix().to_vec()).unwrap(), f);
        }
        assert!(!SymplecticForm::standard(1).with_flipped_entry(1, 2).round_trip_ok());
    }

    #[test]
    fn degree_blocks_partition_basis() {
        let c = ctx(1, 2);
        let total: usize = MultiDegree::all(&c)
            .iter()
            .map(|d| c.basis_of_degree(d).len())
            .sum();
        assert_eq!(total, 16);
        assert_eq!(MultiDegree::new(vec![1, 1, 0]).parity(), Parity::Even);
        assert_eq!(MultiDegree::new(vec![1, 0, 0]).parity(), Parity::Odd);
    }

    #[test]
    fn json_round_trip() {
        let c = ctx(1, 2);
        let v = Multivector::from_generators(c, &[GeneratorId::new(2, 1), GeneratorId::new(1, 2)])
            .unwrap()
            .add(&Multivector::one(c).scale(&crate::rational::qr(3, 4)))
            .unwrap();
        let j = v.to_json();
        assert_eq!(j.terms[0].coef, "3/4");
        assert_eq!(j.terms[1].mono, vec![[1, 2], [2, 1]]);
        assert_eq!(j.terms[1].coef, "-1/1");
        assert_eq!(Multivector::from_json(&j).unwrap(), v);
    }
}
