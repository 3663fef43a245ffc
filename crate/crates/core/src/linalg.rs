//! Fraction-free sparse row reduction over the integers.
//!
//! Rows with rational entries are scaled to primitive integer rows before
//! entering the basis. Elimination multiplies through by the pivot instead of
//! dividing, then strips the content, so no pivot choice ever needs a
//! tolerance and ranks are exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Sparse integer row, sorted by column, no zero entries, primitive, with a
/// positive leading entry (or empty).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseRow(Vec<(usize, BigInt)>);

impl SparseRow {
    pub fn from_rationals<I: IntoIterator<Item = (usize, Q)>>(entries: I) -> Self {
        let mut map: BTreeMap<usize, Q> = BTreeMap::new();
        for (c, v) in entries {
            let e = map.entry(c).or_insert_with(Q::zero);
            *e += v;
        }
        map.retain(|_, v| !v.is_zero());
        let lcm = map
            .values()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints = map
            .into_iter()
            .map(|(c, v)| (c, (v * Q::from_integer(lcm.clone())).to_integer()))
            .collect();
        let mut row = SparseRow(ints);
        row.normalize();
        row
    }

    pub fn from_integers<I: IntoIterator<Item = (usize, BigInt)>>(entries: I) -> Self {
        let mut map: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, v) in entries {
            *map.entry(c).or_insert_with(BigInt::zero) += v;
        }
        map.retain(|_, v| !v.is_zero());
        let mut row = SparseRow(map.into_iter().collect());
        row.normalize();
        row
    }

    fn normalize(&mut self) {
        if self.0.is_empty() {
            return;
        }
        let g = self
            .0
            .iter()
            .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        let flip = self.0[0].1.is_negative();
        for (_, v) in self.0.iter_mut() {
            *v /= &g;
            if flip {
                *v = -&*v;
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.0
    }

    fn coeff(&self, col: usize) -> Option<&BigInt> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }

    /// `a*self - b*other`, then made primitive.
    fn combine(&self, a: &BigInt, other: &SparseRow, b: &BigInt) -> SparseRow {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ci = self.0.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let cj = other.0.get(j).map(|e| e.0).unwrap_or(usize::MAX);
            if ci < cj {
                out.push((ci, a * &self.0[i].1));
                i += 1;
            } else if cj < ci {
                out.push((cj, -(b * &other.0[j].1)));
                j += 1;
            } else {
                let v = a * &self.0[i].1 - b * &other.0[j].1;
                if !v.is_zero() {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        let mut row = SparseRow(out);
        row.normalize();
        row
    }

    /// Eliminates `col` from `self` using `pivot_row`, whose entry at `col` is nonzero.
    fn eliminate(&self, col: usize, pivot_row: &SparseRow) -> SparseRow {
        let Some(c) = self.coeff(col) else {
            return self.clone();
        };
        let p = pivot_row.coeff(col).expect("pivot entry present");
        let g = c.gcd(p);
        self.combine(&(p / &g), pivot_row, &(c / &g))
    }
}

/// Row-echelon basis of a growing row space, keyed by pivot column.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, SparseRow>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` until its leading column is not a pivot column.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut row = row.clone();
        while let Some(lead) = row.lead() {
            match self.rows.get(&lead) {
                Some(b) => row = row.eliminate(lead, b),
                None => break,
            }
        }
        row
    }

    /// Adds `row` to the span; returns `true` when it was independent.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let r = self.reduce(&row);
        match r.lead() {
            Some(lead) => {
                self.rows.insert(lead, r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.rows.values()
    }

    /// Basis of `{x : row·x = 0 for every row}` in a space of `ncols` columns.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Q>> {
        // Back-substitute into reduced echelon form, highest pivot first.
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let cols: Vec<usize> = r.0.iter().map(|(c, _)| *c).filter(|c| *c > p).collect();
            for c in cols {
                if let Some(piv) = reduced.get(&c) {
                    r = r.eliminate(c, piv);
                }
            }
            reduced.insert(p, r);
        }
        let mut out = Vec::new();
        for f in 0..ncols {
            if reduced.contains_key(&f) {
                continue;
            }
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (&p, r) in &reduced {
                if let Some(a_f) = r.coeff(f) {
                    let a_p = r.coeff(p).expect("pivot");
                    v[p] = -Q::new(a_f.clone(), a_p.clone());
                }
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a list of rational rows.
pub fn rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut b = EchelonBasis::new();
    for r in rows {
        b.insert(r);
    }
    b.rank()
}

/// Inverse of a square rational matrix by Gauss-Jordan, or `None` if singular.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let d = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..d).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..d {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * d {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[d..].to_vec()).collect())
}
