//! Sparse multivariate Laurent polynomials over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exp: Vec<i32>,
    pub coef: String,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn monomial(exp: Vec<i32>, c: Q) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i32>, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exp: Vec<i32>, c: Q) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only exponents accepted by `keep`.
    pub fn mul_filtered(&self, other: &Poly, keep: impl Fn(&[i32]) -> bool) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<i32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if keep(&e) {
                    out.add_term(e, ca * cb);
                }
            }
        }
        out
    }

    pub fn retain(&mut self, keep: impl Fn(&[i32]) -> bool) {
        self.terms.retain(|e, _| keep(e));
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Multiplies every exponent vector by x^shift.
    pub fn shift(&self, shift: &[i32]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, at: &[Q]) -> Result<Q> {
        if at.len() != self.nvars {
            return Err(Error::IndexOutOfRange(format!(
                "{} values for {} variables",
                at.len(),
                self.nvars
            )));
        }
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, k) in at.iter().zip(e) {
                if *k != 0 {
                    if x.is_zero() && *k < 0 {
                        return Err(Error::IndexOutOfRange("negative power of zero".into()));
                    }
                    t *= rational::pow(x, *k as i64);
                }
            }
            s += t;
        }
        Ok(s)
    }

    /// Substitutes x_v ↦ 1 - x_v for each listed variable (an involution).
    pub fn substitute_one_minus(&self, vars: &[usize]) -> Result<Poly> {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = Poly::monomial(
                e.iter()
                    .enumerate()
                    .map(|(i, k)| if vars.contains(&i) { 0 } else { *k })
                    .collect(),
                c.clone(),
            );
            for &v in vars {
                if e[v] < 0 {
                    return Err(Error::Parse("cannot rewrite a negative power in 1-y".into()));
                }
                let one_minus = Poly::one(self.nvars).sub(&Poly::var(self.nvars, v));
                term = term.mul(&one_minus.pow(e[v] as u32));
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Replaces every exponent k of the listed variables by -k (x ↦ 1/x).
    pub fn invert_vars(&self, vars: &[usize]) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        e.iter()
                            .enumerate()
                            .map(|(i, k)| if vars.contains(&i) { -k } else { *k })
                            .collect(),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> Vec<PolyTermJson> {
        self.terms
            .iter()
            .map(|(e, c)| PolyTermJson {
                exp: e.clone(),
                coef: rational::to_string(c),
            })
            .collect()
    }

    /// Human-readable form with the given variable names.
    pub fn display(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k != 0)
                    .map(|(i, k)| {
                        if *k == 1 {
                            names[i].to_string()
                        } else {
                            format!("{}^{}", names[i], k)
                        }
                    })
                    .collect();
                let coef = if c.is_integer() {
                    c.numer().to_string()
                } else {
                    rational::to_string(c)
                };
                if mono.is_empty() {
                    coef
                } else {
                    format!("{}*{}", coef, mono.join("*"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let sq = s.pow(2);
        assert_eq!(sq.coefficient(&[1, 1]), q(2));
        assert_eq!(sq.eval(&[q(2), q(3)]).unwrap(), q(25));
    }

    #[test]
    fn one_minus_is_involution() {
        let p = Poly::var(2, 0).pow(3).add(&Poly::var(2, 1).scale(&q(5)));
        let t = p.substitute_one_minus(&[0, 1]).unwrap();
        assert_eq!(t.substitute_one_minus(&[0, 1]).unwrap(), p);
    }

    #[test]
    fn laurent_eval() {
        let p = Poly::monomial(vec![-1], q(4));
        assert_eq!(p.eval(&[q(2)]).unwrap(), q(2));
        assert!(p.eval(&[q(0)]).is_err());
    }
}
