//! Pluri-Hodge numbers of a K3 surface and their torus traces.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::exalg::Parity;
use crate::poly::Poly;
use crate::rational::{binomial, q, Q};
use crate::reps::{all_tuples, multiplicity, HodgeTable, Weight};

pub const MAX_K3_G: usize = 6;

pub fn catalan(k: usize) -> BigInt {
    binomial(2 * k as i64, k as i64) - binomial(2 * k as i64, k as i64 - 1)
}

/// Dimension of the SU(2)-invariants in the m-th tensor power of the defining representation.
pub fn su2_invariant_dim(m: usize) -> BigInt {
    if m % 2 == 1 {
        BigInt::from(0)
    } else {
        catalan(m / 2)
    }
}

/// Form degrees p̲ ∈ {0,1,2}^g of a pluri-Hodge group on a surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K3Profile {
    p: Vec<usize>,
}

impl K3Profile {
    pub fn new(p: Vec<usize>) -> Result<Self> {
        if let Some(bad) = p.iter().find(|&&x| x > 2) {
            return Err(Error::IndexOutOfRange(format!("form degree {bad} on a surface")));
        }
        Ok(K3Profile { p })
    }

    pub fn p(&self) -> &[usize] {
        &self.p
    }

    /// Number of entries equal to 1.
    pub fn m(&self) -> usize {
        self.p.iter().filter(|&&x| x == 1).count()
    }
}

/// h^{(p̲,q)} of a K3 surface; zero for q outside 0..=2.
pub fn k3_pluri_hodge(profile: &K3Profile, qd: i64) -> i64 {
    let m = profile.m();
    let rr = (1i64 << (m + 1)) * (6 * m as i64 - 1);
    let c = su2_invariant_dim(m).to_i64().expect("Catalan number fits");
    match qd {
        0 | 2 => c,
        1 => 2 * c + rr,
        _ => 0,
    }
}

/// Full table over p̲ ∈ {0,1,2}^g and q ∈ {0,1,2}, with n = 1.
pub fn build_k3_table(g: usize) -> Result<HodgeTable> {
    guard("K3 table length g", g as u128, MAX_K3_G as u128)?;
    let mut t = HodgeTable::new(1, g);
    for p in all_tuples(g, 2) {
        let prof = K3Profile::new(p.clone())?;
        for qd in 0..=2 {
            t.set(p.clone(), qd, k3_pluri_hodge(&prof, qd as i64));
        }
    }
    Ok(t)
}

/// Eigenvalues (y_1, …, y_g) of a torus element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement(pub Vec<Q>);

impl TorusElement {
    pub fn new(y: Vec<Q>) -> Result<Self> {
        if y.iter().any(|x| x == &q(0)) {
            return Err(Error::IndexOutOfRange("torus eigenvalues must be nonzero".into()));
        }
        Ok(TorusElement(y))
    }
}

/// y^{-n̲} Σ_p h^{(p̲,q)} y^{p̲}, over the requested parity class of |p̲| (or both).
pub fn trace_on_hq(table: &HodgeTable, qd: usize, parity: Option<Parity>) -> Poly {
    let n = table.n as i32;
    let mut out = Poly::zero(table.g);
    for (p, tq, h) in table.entries() {
        if tq != qd {
            continue;
        }
        let s: usize = p.iter().sum();
        let par = if s % 2 == 0 { Parity::Even } else { Parity::Odd };
        if parity.is_some_and(|want| want != par) {
            continue;
        }
        out.add_term(p.iter().map(|&x| x as i32 - n).collect(), q(h));
    }
    out
}

/// Σ_q (-1)^q (Tr_+ - Tr_-) as a Laurent polynomial.
pub fn supertrace(table: &HodgeTable) -> Poly {
    let mut out = Poly::zero(table.g);
    for qd in 0..=table.max_q() {
        let plus = trace_on_hq(table, qd, Some(Parity::Even));
        let minus = trace_on_hq(table, qd, Some(Parity::Odd));
        let d = plus.sub(&minus);
        out = if qd % 2 == 0 { out.add(&d) } else { out.sub(&d) };
    }
    out
}

pub fn evaluate_at(p: &Poly, t: &TorusElement) -> Result<Q> {
    p.eval(&t.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check232 {
    pub multiplicity: i64,
    pub h_111: i64,
    pub h_1: i64,
    pub difference: i64,
    pub passed: bool,
}

/// Trivial-representation multiplicity in H^1 at g = 3 against h^{(1,1,1),1} - 2 h^{(1),1}.
pub fn check_232() -> Result<Check232> {
    let t3 = build_k3_table(3)?;
    let t1 = build_k3_table(1)?;
    let m = multiplicity(&t3, 1, &Weight::zero(3), 1, 3)?;
    let h_111 = t3.get(&[1, 1, 1], 1);
    let h_1 = t1.get(&[1], 1);
    let difference = h_111 - 2 * h_1;
    Ok(Check232 {
        multiplicity: m,
        h_111,
        h_1,
        difference,
        passed: m == 232 && difference == 232,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        let c: Vec<BigInt> = (0..6).map(catalan).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42].map(BigInt::from).to_vec());
        assert_eq!(su2_invariant_dim(1), BigInt::from(0));
        assert_eq!(su2_invariant_dim(4), BigInt::from(2));
    }

    #[test]
    fn classical_diamond() {
        let t = build_k3_table(1).unwrap();
        let grid: Vec<Vec<i64>> = (0..3).map(|p| (0..3).map(|qd| t.get(&[p], qd)).collect()).collect();
        assert_eq!(grid, vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn profile_values() {
        let p = |v: Vec<usize>| K3Profile::new(v).unwrap();
        assert_eq!(k3_pluri_hodge(&p(vec![1, 1, 1]), 1), 272);
        assert_eq!(k3_pluri_hodge(&p(vec![0]), 1), 0);
        assert_eq!(k3_pluri_hodge(&p(vec![1]), 3), 0);
        assert!(K3Profile::new(vec![3]).is_err());
    }

    #[test]
    fn the_232_check() {
        let c = check_232().unwrap();
        assert_eq!(c.multiplicity, 232);
        assert!(c.passed);
    }

    #[test]
    fn trace_examples() {
        let t = build_k3_table(1).unwrap();
        assert_eq!(trace_on_hq(&t, 1, None), Poly::constant(1, q(20)));
        let st = supertrace(&t);
        assert_eq!(st.coefficient(&[-1]), q(2));
        assert_eq!(st.coefficient(&[0]), q(20));
        assert_eq!(st.coefficient(&[1]), q(2));
    }
}
