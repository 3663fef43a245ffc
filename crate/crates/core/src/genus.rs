//! Truncated series in Chern roots: the Todd class, the Riemann-Roch form of
//! the pluri-χ_y genus and its Chern-number coefficients.
//!
//! A [`ChernSeries`] lives in n root variables x_1..x_n followed by g
//! variables t_j = 1 - y_j, and drops every term of root degree above n.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::poly::Poly;
use crate::rational::{self, factorial, q, Q};
use crate::reps::HodgeTable;

pub const MAX_TODD_N: usize = 6;
pub const MAX_CHI_N: usize = 4;
pub const MAX_CHI_G: usize = 3;
pub const MAX_SURFACE_M: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernSeries {
    pub n: usize,
    pub g: usize,
    pub poly: Poly,
}

impl ChernSeries {
    fn root_degree(n: usize, e: &[i32]) -> i32 {
        e[..n].iter().sum()
    }

    pub fn one(n: usize, g: usize) -> Self {
        ChernSeries {
            n,
            g,
            poly: Poly::one(n + g),
        }
    }

    pub fn from_poly(n: usize, g: usize, mut poly: Poly) -> Self {
        poly.retain(|e| Self::root_degree(n, e) <= n as i32);
        ChernSeries { n, g, poly }
    }

    pub fn mul(&self, other: &ChernSeries) -> ChernSeries {
        let n = self.n;
        ChernSeries {
            n,
            g: self.g,
            poly: self
                .poly
                .mul_filtered(&other.poly, |e| Self::root_degree(n, e) <= n as i32),
        }
    }

    /// Part of root degree exactly `d`.
    pub fn degree_part(&self, d: usize) -> ChernSeries {
        let mut p = self.poly.clone();
        p.retain(|e| Self::root_degree(self.n, e) == d as i32);
        ChernSeries {
            n: self.n,
            g: self.g,
            poly: p,
        }
    }

    /// Coefficient of Π t_j^{k_j} as a polynomial in the roots alone.
    pub fn t_coefficient(&self, k: &[i32]) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in self.poly.terms() {
            if &e[self.n..] == k {
                out.add_term(e[..self.n].to_vec(), c.clone());
            }
        }
        out
    }

    /// Distinct t-exponent vectors present.
    pub fn t_exponents(&self) -> Vec<Vec<i32>> {
        let mut v: Vec<Vec<i32>> = self.poly.terms().map(|(e, _)| e[self.n..].to_vec()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Univariate series in root i with the given coefficients.
fn root_series(n: usize, g: usize, i: usize, coeffs: &[Q]) -> ChernSeries {
    let mut p = Poly::zero(n + g);
    for (k, c) in coeffs.iter().enumerate() {
        let mut e = vec![0; n + g];
        e[i] = k as i32;
        p.add_term(e, c.clone());
    }
    ChernSeries::from_poly(n, g, p)
}

/// Coefficients of e^{-x} up to x^d.
fn exp_neg_coeffs(d: usize) -> Vec<Q> {
    (0..=d)
        .map(|k| {
            let s = if k % 2 == 0 { 1 } else { -1 };
            Q::new(BigInt::from(s), factorial(k as u64))
        })
        .collect()
}

/// Coefficients of x/(1 - e^{-x}) up to x^d, by inverting (1 - e^{-x})/x.
pub fn todd_coeffs(d: usize) -> Vec<Q> {
    let a: Vec<Q> = (0..=d)
        .map(|k| {
            let s = if k % 2 == 0 { 1 } else { -1 };
            Q::new(BigInt::from(s), factorial(k as u64 + 1))
        })
        .collect();
    let mut b = vec![Q::one()];
    for k in 1..=d {
        let s: Q = (1..=k).map(|j| &a[j] * &b[k - j]).sum();
        b.push(-s);
    }
    b
}

fn todd_in(n: usize, g: usize) -> ChernSeries {
    let c = todd_coeffs(n);
    (0..n).fold(ChernSeries::one(n, g), |acc, i| acc.mul(&root_series(n, g, i, &c)))
}

/// Π_i x_i/(1 - e^{-x_i}), truncated at root degree n.
pub fn todd_series(n: usize) -> Result<ChernSeries> {
    guard("Todd series dimension n", n as u128, MAX_TODD_N as u128)?;
    Ok(todd_in(n, 0))
}

/// Top root-degree part of Todd · Π_j Π_i (a_i + t_j e_i), with e_i = e^{-x_i} and a_i = 1 - e_i.
pub fn chi_genus_series(n: usize, g: usize) -> Result<ChernSeries> {
    guard("genus series dimension n", n as u128, MAX_CHI_N as u128)?;
    guard("genus series length g", g as u128, MAX_CHI_G as u128)?;
    let e = exp_neg_coeffs(n);
    let a: Vec<Q> = e
        .iter()
        .enumerate()
        .map(|(k, c)| if k == 0 { Q::one() - c } else { -c.clone() })
        .collect();
    let mut acc = todd_in(n, g);
    for j in 0..g {
        for i in 0..n {
            let ai = root_series(n, g, i, &a);
            let ei = root_series(n, g, i, &e);
            let tj = ChernSeries::from_poly(n, g, Poly::var(n + g, n + j));
            let factor = ChernSeries {
                n,
                g,
                poly: ai.poly.add(&tj.mul(&ei).poly),
            };
            acc = acc.mul(&factor);
        }
    }
    Ok(acc.degree_part(n))
}

/// Formal combination of Chern monomials c_{λ_1}⋯c_{λ_k}, keyed by λ in decreasing order (c_0 = 1 omitted).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChernMonomialValue {
    pub terms: BTreeMap<Vec<usize>, Q>,
}

impl ChernMonomialValue {
    pub fn single(mut indices: Vec<usize>) -> Self {
        indices.retain(|&i| i > 0);
        indices.sort_unstable_by(|a, b| b.cmp(a));
        let mut terms = BTreeMap::new();
        terms.insert(indices, Q::one());
        ChernMonomialValue { terms }
    }

    pub fn add_term(&mut self, key: Vec<usize>, c: Q) {
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Pairs with a fundamental class given Chern numbers c_λ[X]; missing numbers read as 0.
    pub fn evaluate(&self, numbers: &ChernNumbers) -> Q {
        self.terms
            .iter()
            .map(|(k, c)| c * numbers.get(k).cloned().unwrap_or_else(Q::zero))
            .sum()
    }
}

impl fmt::Display for ChernMonomialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mono = if k.is_empty() {
                    "1".to_string()
                } else {
                    k.iter().map(|i| format!("c{i}")).collect::<Vec<_>>().join("*")
                };
                format!("({})*{}", rational::to_string(c), mono)
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Chern numbers c_λ[X] keyed by λ in decreasing order.
pub type ChernNumbers = BTreeMap<Vec<usize>, Q>;

/// e_k in `vars` root variables.
fn elementary(vars: usize, k: usize) -> Poly {
    let mut p = Poly::zero(vars);
    for mask in 0u32..(1 << vars) {
        if mask.count_ones() as usize == k {
            p.add_term((0..vars).map(|i| (mask >> i & 1) as i32).collect(), Q::one());
        }
    }
    p
}

/// Rewrites a homogeneous symmetric polynomial in the roots through c_k = e_k.
pub fn elementary_symmetric_extract(s: &Poly) -> Result<ChernMonomialValue> {
    let vars = s.nvars();
    let mut degrees = s.terms().map(|(e, _)| e.iter().sum::<i32>());
    if let Some(d) = degrees.next() {
        if degrees.any(|x| x != d) {
            return Err(Error::NotHomogeneous(d.max(0) as usize));
        }
    }
    let es: Vec<Poly> = (0..=vars).map(|k| elementary(vars, k)).collect();
    let mut rest = s.clone();
    let mut out = ChernMonomialValue::default();
    loop {
        let leading = rest.terms().next_back().map(|(e, c)| (e.clone(), c.clone()));
        let Some((lead, c)) = leading else { break };
        if lead.iter().any(|&k| k < 0) || lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotSymmetric);
        }
        let mut key = Vec::new();
        let mut prod = Poly::one(vars);
        for k in 1..=vars {
            let next = if k < vars { lead[k] } else { 0 };
            let mult = (lead[k - 1] - next) as usize;
            for _ in 0..mult {
                key.push(k);
                prod = prod.mul(&es[k]);
            }
        }
        key.sort_unstable_by(|a, b| b.cmp(a));
        rest = rest.sub(&prod.scale(&c));
        out.add_term(key, c);
    }
    Ok(out)
}

/// Chern-monomial content of each t-coefficient of the genus series.
pub fn genus_coefficients(n: usize, g: usize) -> Result<BTreeMap<Vec<i32>, ChernMonomialValue>> {
    let s = chi_genus_series(n, g)?;
    s.t_exponents()
        .into_iter()
        .map(|k| {
            let v = elementary_symmetric_extract(&s.t_coefficient(&k))?;
            Ok((k, v))
        })
        .filter(|r: &Result<(Vec<i32>, ChernMonomialValue)>| r.as_ref().map_or(true, |(_, v)| !v.terms.is_empty()))
        .collect()
}

/// Coefficient of Π (1-y_j)^{n-q_j} for Σ q_j = n, as a Chern-monomial combination.
pub fn cstring_coefficient(n: usize, g: usize, qs: &[usize]) -> Result<ChernMonomialValue> {
    let s = chi_genus_series(n, g)?;
    let k: Vec<i32> = qs.iter().map(|&x| n as i32 - x as i32).collect();
    elementary_symmetric_extract(&s.t_coefficient(&k))
}

/// All g-tuples of nonnegative integers summing to n.
pub fn compositions(n: usize, g: usize) -> Vec<Vec<usize>> {
    if g == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, g - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// χ_{-y} in the y-variables from a full set of Chern numbers.
pub fn genus_from_chern_numbers(n: usize, g: usize, numbers: &ChernNumbers) -> Result<Poly> {
    let mut t_poly = Poly::zero(g);
    for (k, v) in genus_coefficients(n, g)? {
        t_poly.add_term(k, v.evaluate(numbers));
    }
    t_poly.substitute_one_minus(&(0..g).collect::<Vec<_>>())
}

/// Reads c_{q_1}⋯c_{q_g}[X] off the (1-y) expansion of a genus.
pub fn chern_numbers_from_genus(n: usize, genus: &Poly) -> Result<ChernNumbers> {
    let g = genus.nvars();
    let t = genus.substitute_one_minus(&(0..g).collect::<Vec<_>>())?;
    let mut out = ChernNumbers::new();
    for qs in compositions(n, g) {
        let k: Vec<i32> = qs.iter().map(|&x| n as i32 - x as i32).collect();
        let mut key: Vec<usize> = qs.into_iter().filter(|&x| x > 0).collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(key, t.coefficient(&k));
    }
    Ok(out)
}

/// Σ (-1)^{q+|p̲|} h^{(p̲,q)} Π y_i^{p_i}.
pub fn genus_from_table(table: &HodgeTable) -> Poly {
    let mut out = Poly::zero(table.g);
    for (p, qd, h) in table.entries() {
        let sign = if (qd + p.iter().sum::<usize>()) % 2 == 0 { 1 } else { -1 };
        out.add_term(p.iter().map(|&x| x as i32).collect(), q(sign * h));
    }
    out
}

/// ∫ Todd · ch((Ω¹)^{⊗m}) on a surface with c_1 = 0 and c_2 = 24.
pub fn evaluate_surface_rr(m: usize) -> Result<BigInt> {
    guard("tensor power m", m as u128, MAX_SURFACE_M as u128)?;
    let (n, g) = (2, 0);
    let e = exp_neg_coeffs(n);
    let ch = ChernSeries {
        n,
        g,
        poly: root_series(n, g, 0, &e).poly.add(&root_series(n, g, 1, &e).poly),
    };
    let mut acc = todd_in(n, g);
    for _ in 0..m {
        acc = acc.mul(&ch);
    }
    let top = elementary_symmetric_extract(&acc.degree_part(n).poly)?;
    let mut numbers = ChernNumbers::new();
    numbers.insert(vec![1, 1], Q::zero());
    numbers.insert(vec![2], q(24));
    let v = top.evaluate(&numbers);
    if !v.is_integer() {
        return Err(Error::Parse(format!(
            "non-integral surface value {}",
            rational::to_string(&v)
        )));
    }
    Ok(v.to_integer())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CstringCheck {
    pub q: Vec<usize>,
    pub coefficient: String,
    pub matches: bool,
}

/// Compares each (1-y) coefficient with the product c_{q_1}⋯c_{q_g}.
pub fn check_cstring(n: usize, g: usize) -> Result<Vec<CstringCheck>> {
    let s = chi_genus_series(n, g)?;
    compositions(n, g)
        .into_iter()
        .map(|qs| {
            let k: Vec<i32> = qs.iter().map(|&x| n as i32 - x as i32).collect();
            let v = elementary_symmetric_extract(&s.t_coefficient(&k))?;
            Ok(CstringCheck {
                matches: v == ChernMonomialValue::single(qs.clone()),
                coefficient: v.to_string(),
                q: qs,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    #[test]
    fn todd_low_order() {
        let t = todd_series(1).unwrap();
        assert_eq!(t.poly.coefficient(&[0]), q(1));
        assert_eq!(t.poly.coefficient(&[1]), qr(1, 2));
        assert_eq!(todd_coeffs(4), vec![q(1), qr(1, 2), qr(1, 12), q(0), qr(-1, 720)]);
    }

    #[test]
    fn todd_degree_two() {
        let t = todd_series(2).unwrap();
        let v = elementary_symmetric_extract(&t.degree_part(2).poly).unwrap();
        let mut expect = ChernMonomialValue::default();
        expect.add_term(vec![1, 1], qr(1, 12));
        expect.add_term(vec![2], qr(1, 12));
        assert_eq!(v, expect);
    }

    #[test]
    fn extraction() {
        let x1x2 = Poly::monomial(vec![1, 1], q(1));
        assert_eq!(elementary_symmetric_extract(&x1x2).unwrap(), ChernMonomialValue::single(vec![2]));
        let x1 = Poly::monomial(vec![1, 0], q(1));
        assert_eq!(elementary_symmetric_extract(&x1), Err(Error::NotSymmetric));
        let mixed = x1x2.add(&Poly::one(2));
        assert!(matches!(elementary_symmetric_extract(&mixed), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn surface_values() {
        assert_eq!(evaluate_surface_rr(0).unwrap(), BigInt::from(2));
        assert_eq!(evaluate_surface_rr(1).unwrap(), BigInt::from(-20));
        assert_eq!(evaluate_surface_rr(3).unwrap(), BigInt::from(-272));
        assert!(evaluate_surface_rr(9).is_err());
    }

    #[test]
    fn cstring_small() {
        for n in 1..=2 {
            for g in 1..=2 {
                assert!(check_cstring(n, g).unwrap().iter().all(|c| c.matches));
            }
        }
    }
}
