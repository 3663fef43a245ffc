//! Weight combinatorics for Sp(g) and GL(m): signed permutations, Weyl and
//! hook-content dimensions, the Λ(V⊗W) decomposition and multiplicities of
//! pluri-Hodge tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exalg::Parity;
use crate::rational::Q;

/// A g-tuple of integers; dominant when weakly decreasing and nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1]) && self.0.last().map_or(true, |&x| x >= 0)
    }

    pub fn zero(g: usize) -> Self {
        Weight(vec![0; g])
    }

    pub fn constant(g: usize, n: i64) -> Self {
        Weight(vec![n; g])
    }

    /// ρ = (g, g-1, …, 1).
    pub fn rho(g: usize) -> Self {
        Weight((1..=g as i64).rev().collect())
    }
}

/// Element of the hyperoctahedral group: (w·x)_k = signs[k] · x[perm[k]].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(g: usize) -> Self {
        SignedPermutation {
            perm: (0..g).collect(),
            signs: vec![1; g],
        }
    }

    /// All 2^g · g! elements.
    pub fn all(g: usize) -> Vec<SignedPermutation> {
        let mut perms: Vec<Vec<usize>> = vec![Vec::new()];
        for k in 0..g {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=k {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        let mut out = Vec::with_capacity(perms.len() << g);
        for p in perms {
            for mask in 0..(1u32 << g) {
                let signs = (0..g).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect();
                out.push(SignedPermutation { perm: p.clone(), signs });
            }
        }
        out
    }

    fn inversions(&self) -> usize {
        let p = &self.perm;
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    /// [w]: number of sign changes, plus one when the permutation is odd.
    pub fn length_class(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count() + self.inversions() % 2
    }

    /// (-1)^{[w]}.
    pub fn sign(&self) -> i64 {
        if self.length_class() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn act(&self, x: &[i64]) -> Vec<i64> {
        (0..x.len())
            .map(|k| self.signs[k] as i64 * x[self.perm[k]])
            .collect()
    }

    /// The element acting as `self` after `other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        // (self·(other·x))_k = s_k · (other·x)[p_k] = s_k · t_{p_k} · x[q_{p_k}]
        let g = self.perm.len();
        SignedPermutation {
            perm: (0..g).map(|k| other.perm[self.perm[k]]).collect(),
            signs: (0..g).map(|k| self.signs[k] * other.signs[self.perm[k]]).collect(),
        }
    }
}

/// A weakly decreasing tuple of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((1..=cols).map(|c| self.0.iter().filter(|&&r| r >= c).count()).collect())
    }

    /// All partitions with at most `rows` rows and parts at most `cols`.
    pub fn in_box(rows: usize, cols: usize) -> Vec<Partition> {
        fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(rows, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(rows, cols, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

/// Dimension of the Sp(g) irrep with highest weight μ (type C Weyl formula).
pub fn sp_irrep_dim(g: usize, mu: &Weight) -> Result<BigInt> {
    if mu.0.len() != g || !mu.is_dominant() {
        return Err(Error::NotDominant(mu.0.clone()));
    }
    let r = g as i64;
    let l: Vec<i64> = (0..g).map(|i| mu.0[i] + r - i as i64).collect();
    let rho: Vec<i64> = (0..g).map(|i| r - i as i64).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..g {
        for j in i + 1..g {
            num *= BigInt::from((l[i] - l[j]) * (l[i] + l[j]));
            den *= BigInt::from((rho[i] - rho[j]) * (rho[i] + rho[j]));
        }
        num *= BigInt::from(l[i]);
        den *= BigInt::from(rho[i]);
    }
    Ok(num / den)
}

/// dim S_λ(C^m) by the hook-content formula.
pub fn gl_schur_dim(m: usize, lambda: &Partition) -> BigInt {
    if lambda.rows() > m {
        return BigInt::zero();
    }
    let t = lambda.transpose();
    let mut acc = Q::one();
    for (i, &row) in lambda.0.iter().enumerate() {
        for j in 0..row {
            let content = m as i64 + j as i64 - i as i64;
            let hook = (row - j) + (t.0[j] - i) - 1;
            acc *= Q::new(BigInt::from(content), BigInt::from(hook as i64));
        }
    }
    acc.to_integer()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionEntry {
    pub mu: Vec<i64>,
    pub mu_tilde: Vec<i64>,
    #[serde(rename = "dim_spV")]
    pub dim_spv: u64,
    pub dim_spg: u64,
}

/// Pairs (μ, μ̃) in Λ(V⊗W) = ⊕ R_μ̃(Sp(V)) ⊗ R_μ(Sp(g)).
pub fn enumerate_decomposition(n: usize, g: usize) -> Result<Vec<DecompositionEntry>> {
    let ni = n as i64;
    let mut out = Vec::new();
    // a with n ≥ a_1 ≥ … ≥ a_g ≥ 0 is a partition in the g×n box.
    for p in Partition::in_box(g, n) {
        let mut a: Vec<i64> = p.0.iter().map(|&x| x as i64).collect();
        a.resize(g, 0);
        let mu: Vec<i64> = a.iter().rev().map(|&x| ni - x).collect();
        let mu_tilde: Vec<i64> = (1..=ni)
            .map(|k| a.iter().filter(|&&x| x >= k).count() as i64)
            .collect();
        let dim_spv = sp_irrep_dim(n, &Weight(mu_tilde.clone()))?;
        let dim_spg = sp_irrep_dim(g, &Weight(mu.clone()))?;
        out.push(DecompositionEntry {
            mu,
            mu_tilde,
            dim_spv: dim_spv.to_u64().expect("dimension fits u64"),
            dim_spg: dim_spg.to_u64().expect("dimension fits u64"),
        });
    }
    out.sort_by(|x, y| y.mu.cmp(&x.mu));
    Ok(out)
}

/// Pluri-Hodge dimensions h^{(p̲,q)}; absent or out-of-range entries read as 0.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HodgeTable {
    pub n: usize,
    pub g: usize,
    entries: BTreeMap<(Vec<usize>, usize), i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeEntryJson {
    pub p: Vec<usize>,
    pub q: usize,
    pub h: i64,
}

impl HodgeTable {
    pub fn new(n: usize, g: usize) -> Self {
        HodgeTable {
            n,
            g,
            entries: BTreeMap::new(),
        }
    }

    /// Fills every (p̲, q) with 0 ≤ p_i ≤ 2n and q ≤ max_q from `f`.
    pub fn from_fn(n: usize, g: usize, max_q: usize, f: impl Fn(&[usize], usize) -> i64) -> Self {
        let mut t = Self::new(n, g);
        for p in all_tuples(g, 2 * n) {
            for q in 0..=max_q {
                t.set(p.clone(), q, f(&p, q));
            }
        }
        t
    }

    pub fn set(&mut self, p: Vec<usize>, q: usize, h: i64) {
        if h == 0 {
            self.entries.remove(&(p, q));
        } else {
            self.entries.insert((p, q), h);
        }
    }

    pub fn get(&self, p: &[i64], q: i64) -> i64 {
        if p.len() != self.g || q < 0 || p.iter().any(|&x| x < 0 || x > 2 * self.n as i64) {
            return 0;
        }
        let key: Vec<usize> = p.iter().map(|&x| x as usize).collect();
        self.entries.get(&(key, q as usize)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, usize, i64)> {
        self.entries.iter().map(|((p, q), h)| (p, *q, *h))
    }

    pub fn max_q(&self) -> usize {
        self.entries.keys().map(|(_, q)| *q).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Vec<HodgeEntryJson> {
        self.entries
            .iter()
            .map(|((p, q), h)| HodgeEntryJson {
                p: p.clone(),
                q: *q,
                h: *h,
            })
            .collect()
    }
}

/// All g-tuples with entries in 0..=max.
pub fn all_tuples(g: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..g {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..=max).map(move |p| {
                    let mut w = v.clone();
                    w.push(p);
                    w
                })
            })
            .collect();
    }
    out
}

/// m^q(a) = Σ_w (-1)^{[w]} h^{(n̲ + w(a+ρ) - ρ, q)}, optionally restricted to one parity of |p̲|.
pub fn multiplicity_with_parity(
    table: &HodgeTable,
    q: i64,
    a: &Weight,
    n: usize,
    g: usize,
    parity: Option<Parity>,
) -> Result<i64> {
    if table.n != n || table.g != g {
        return Err(Error::ContextMismatch {
            left_n: table.n,
            left_g: table.g,
            right_n: n,
            right_g: g,
        });
    }
    if a.0.len() != g || !a.is_dominant() {
        return Err(Error::NotDominant(a.0.clone()));
    }
    let rho = Weight::rho(g).0;
    let shifted: Vec<i64> = a.0.iter().zip(&rho).map(|(x, r)| x + r).collect();
    let mut total = 0i64;
    for w in SignedPermutation::all(g) {
        let p: Vec<i64> = w
            .act(&shifted)
            .iter()
            .zip(&rho)
            .map(|(x, r)| n as i64 + x - r)
            .collect();
        if let Some(par) = parity {
            let s: i64 = p.iter().sum();
            let this = if s.rem_euclid(2) == 0 { Parity::Even } else { Parity::Odd };
            if this != par {
                continue;
            }
        }
        total += w.sign() * table.get(&p, q);
    }
    Ok(total)
}

pub fn multiplicity(table: &HodgeTable, q: i64, a: &Weight, n: usize, g: usize) -> Result<i64> {
    multiplicity_with_parity(table, q, a, n, g, None)
}

/// Closed form for a = (n, …, n, n-p): h^{(p,q)} - h^{(p-2,q)}, the nonzero entry in the last slot.
pub fn closed_form_last_slot(table: &HodgeTable, q: i64, p: i64) -> i64 {
    let at = |x: i64| {
        let mut v = vec![0; table.g];
        if let Some(last) = v.last_mut() {
            *last = x;
        }
        table.get(&v, q)
    };
    at(p) - at(p - 2)
}

/// Eight-term closed form for g = 2 and a = (n-p1, n-p2).
pub fn closed_form_rank_two(table: &HodgeTable, q: i64, p1: i64, p2: i64) -> i64 {
    let h = |x: i64, y: i64| table.get(&[x, y], q);
    h(p1, p2) - h(p1, p2 - 2) - h(p1 - 4, p2) + h(p1 - 4, p2 - 2) - h(p2 + 1, p1 - 1)
        + h(p2 + 1, p1 - 3)
        + h(p2 - 3, p1 - 1)
        - h(p2 - 3, p1 - 3)
}

/// Invariant dimension of Λ(V⊗W)^{Sp(V)} in each total degree up to `max_degree`:
/// Σ dim S_μ(W) over μ with even rows, first row ≤ 2n, at most g rows.
pub fn invariant_graded_dims(n: usize, g: usize, max_degree: usize) -> BTreeMap<usize, BigInt> {
    let mut out: BTreeMap<usize, BigInt> = (0..=max_degree).map(|d| (d, BigInt::zero())).collect();
    for mu in Partition::in_box(g, 2 * n) {
        if mu.0.iter().any(|r| r % 2 != 0) || mu.size() > max_degree {
            continue;
        }
        *out.get_mut(&mu.size()).expect("degree in range") += gl_schur_dim(g, &mu);
    }
    out
}

/// Whether every entry is nonnegative.
pub fn all_nonnegative(values: &[i64]) -> bool {
    values.iter().all(|v| !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_dimensions() {
        assert_eq!(sp_irrep_dim(1, &Weight(vec![1])).unwrap(), BigInt::from(2));
        assert_eq!(sp_irrep_dim(2, &Weight(vec![1, 1])).unwrap(), BigInt::from(5));
        assert_eq!(sp_irrep_dim(2, &Weight(vec![1, 0])).unwrap(), BigInt::from(4));
        assert_eq!(sp_irrep_dim(2, &Weight(vec![2, 0])).unwrap(), BigInt::from(10));
        assert_eq!(sp_irrep_dim(3, &Weight::zero(3)).unwrap(), BigInt::one());
        assert!(sp_irrep_dim(2, &Weight(vec![0, 1])).is_err());
    }

    #[test]
    fn schur_dimensions() {
        assert_eq!(gl_schur_dim(4, &Partition::new(vec![])), BigInt::one());
        assert_eq!(gl_schur_dim(2, &Partition::new(vec![1])), BigInt::from(2));
        assert_eq!(gl_schur_dim(3, &Partition::new(vec![2])), BigInt::from(6));
        assert_eq!(gl_schur_dim(3, &Partition::new(vec![1, 1])), BigInt::from(3));
        assert_eq!(gl_schur_dim(2, &Partition::new(vec![1, 1, 1])), BigInt::zero());
    }

    #[test]
    fn weyl_group_size() {
        assert_eq!(SignedPermutation::all(3).len(), 48);
        assert_eq!(SignedPermutation::all(1).len(), 2);
    }

    #[test]
    fn decomposition_n1_g1() {
        let d = enumerate_decomposition(1, 1).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!((d[0].mu.clone(), d[0].mu_tilde.clone()), (vec![1], vec![0]));
        assert_eq!((d[1].mu.clone(), d[1].mu_tilde.clone()), (vec![0], vec![1]));
        let total: u64 = d.iter().map(|e| e.dim_spv * e.dim_spg).sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn invariant_dims_n1_g2() {
        let d = invariant_graded_dims(1, 2, 8);
        let total: BigInt = d.values().sum();
        assert_eq!(total, BigInt::from(5));
        assert_eq!(d[&0], BigInt::one());
        assert!(d.iter().filter(|(k, _)| *k % 2 == 1).all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn table_lookup_out_of_range() {
        let mut t = HodgeTable::new(1, 1);
        t.set(vec![1], 1, 20);
        assert_eq!(t.get(&[1], 1), 20);
        assert_eq!(t.get(&[-1], 1), 0);
        assert_eq!(t.get(&[3], 1), 0);
        assert_eq!(t.get(&[1], -1), 0);
    }

    #[test]
    fn partition_transpose() {
        let p = Partition::new(vec![3, 1]);
        assert_eq!(p.transpose(), Partition(vec![2, 1, 1]));
        assert_eq!(p.transpose().transpose(), p);
        assert_eq!(Partition::in_box(2, 2).len(), 6);
    }
}
