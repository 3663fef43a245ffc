//! The sp(g) operators L_ij, Λ^ij, h^i_j on Λ(V⊗W), the commuting sp(V)
//! derivations, invariant subspaces and the factored Sp(g) group action.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::exalg::{Context, Monomial, MultiDegree, Multivector, SymplecticForm};
use crate::linalg::{EchelonBasis, SparseRow};
use crate::rational::{self, q, qr, Q};

/// Largest 2ng for which full-basis checks are attempted.
pub const MAX_EXHAUSTIVE_GENERATORS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpgGenerator {
    /// L_ij, stored with i ≤ j.
    L(usize, usize),
    /// Λ^ij, stored with i ≤ j.
    Lambda(usize, usize),
    /// h^i_j (upper index first).
    H(usize, usize),
}

impl SpgGenerator {
    pub fn l(i: usize, j: usize) -> Self {
        SpgGenerator::L(i.min(j), i.max(j))
    }

    pub fn lambda(i: usize, j: usize) -> Self {
        SpgGenerator::Lambda(i.min(j), i.max(j))
    }

    pub fn h(i: usize, j: usize) -> Self {
        SpgGenerator::H(i, j)
    }

    pub fn indices(&self) -> (usize, usize) {
        match *self {
            SpgGenerator::L(i, j) | SpgGenerator::Lambda(i, j) | SpgGenerator::H(i, j) => (i, j),
        }
    }

    pub fn check(&self, g: usize) -> Result<()> {
        let (i, j) = self.indices();
        if i == 0 || j == 0 || i > g || j > g {
            return Err(Error::IndexOutOfRange(format!("{self} with g={g}")));
        }
        Ok(())
    }

    /// Every generator for W of dimension g.
    pub fn all(g: usize) -> Vec<SpgGenerator> {
        let mut out = Vec::new();
        for i in 1..=g {
            for j in i..=g {
                out.push(SpgGenerator::L(i, j));
                out.push(SpgGenerator::Lambda(i, j));
            }
        }
        for i in 1..=g {
            for j in 1..=g {
                out.push(SpgGenerator::H(i, j));
            }
        }
        out
    }

    /// Change of |p| under this generator.
    pub fn degree_shift(&self) -> i64 {
        match self {
            SpgGenerator::L(..) => 2,
            SpgGenerator::Lambda(..) => -2,
            SpgGenerator::H(..) => 0,
        }
    }
}

impl fmt::Display for SpgGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpgGenerator::L(i, j) => write!(f, "L_{{{i}{j}}}"),
            SpgGenerator::Lambda(i, j) => write!(f, "Lambda^{{{i}{j}}}"),
            SpgGenerator::H(i, j) => write!(f, "h^{{{i}}}_{{{j}}}"),
        }
    }
}

/// An element X of sp(V): X^T ε + ε X = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpVGenerator {
    matrix: Vec<Vec<Q>>,
}

impl SpVGenerator {
    pub fn new(form: &SymplecticForm, matrix: Vec<Vec<Q>>) -> Result<Self> {
        let d = form.dim();
        if matrix.len() != d || matrix.iter().any(|r| r.len() != d) {
            return Err(Error::NotSymplecticAlgebra(format!("expected a {d}x{d} matrix")));
        }
        let eps = form.matrix();
        for a in 0..d {
            for b in 0..d {
                let s: Q = (0..d)
                    .map(|k| &matrix[k][a] * &eps[k][b] + &eps[a][k] * &matrix[k][b])
                    .sum();
                if !s.is_zero() {
                    return Err(Error::NotSymplecticAlgebra(format!(
                        "(X^T e + e X) entry ({},{}) is {}",
                        a + 1,
                        b + 1,
                        rational::to_string(&s)
                    )));
                }
            }
        }
        Ok(SpVGenerator { matrix })
    }

    pub fn matrix(&self) -> &[Vec<Q>] {
        &self.matrix
    }

    /// X = ε^{-1}S for S = E_ab + E_ba, a ≤ b: 2n² + n elements spanning sp(V).
    pub fn spanning_set(form: &SymplecticForm) -> Vec<SpVGenerator> {
        let d = form.dim();
        let inv = form.inverse();
        let mut out = Vec::new();
        for a in 0..d {
            for b in a..d {
                let mut s = vec![vec![Q::zero(); d]; d];
                s[a][b] += Q::one();
                s[b][a] += Q::one();
                let x: Vec<Vec<Q>> = (0..d)
                    .map(|r| (0..d).map(|c| (0..d).map(|k| &inv[r][k] * &s[k][c]).sum()).collect())
                    .collect();
                out.push(SpVGenerator { matrix: x });
            }
        }
        out
    }
}

/// A letter in an operator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    Spg(SpgGenerator),
    SpV(SpVGenerator),
}

/// Rational combination of words; a word acts right to left and the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorExpr {
    pub terms: Vec<(Q, Vec<Letter>)>,
}

impl OperatorExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Q) -> Self {
        OperatorExpr {
            terms: vec![(c, Vec::new())],
        }
    }

    pub fn letter(l: Letter) -> Self {
        OperatorExpr {
            terms: vec![(Q::one(), vec![l])],
        }
    }

    pub fn gen(g: SpgGenerator) -> Self {
        Self::letter(Letter::Spg(g))
    }

    pub fn plus(mut self, other: OperatorExpr) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn scaled(mut self, c: &Q) -> Self {
        for t in self.terms.iter_mut() {
            t.0 *= c;
        }
        self
    }

    pub fn minus(self, other: OperatorExpr) -> Self {
        self.plus(other.scaled(&q(-1)))
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &OperatorExpr) -> Self {
        let mut terms = Vec::new();
        for (a, wa) in &self.terms {
            for (b, wb) in &other.terms {
                let mut w = wa.clone();
                w.extend(wb.iter().cloned());
                terms.push((a * b, w));
            }
        }
        OperatorExpr { terms }
    }

    pub fn commutator(a: &OperatorExpr, b: &OperatorExpr) -> Self {
        a.compose(b).minus(b.compose(a))
    }
}

/// The operators for a fixed context and symplectic form.
#[derive(Clone, Debug)]
pub struct SpAction {
    ctx: Context,
    form: SymplecticForm,
    lower: Vec<(usize, usize, Q)>,
    upper: Vec<(usize, usize, Q)>,
}

impl SpAction {
    pub fn new(ctx: Context, form: SymplecticForm) -> Result<Self> {
        if form.n() != ctx.n {
            return Err(Error::InvalidForm(format!(
                "form has n={} but context has n={}",
                form.n(),
                ctx.n
            )));
        }
        let d = form.dim();
        let nonzero = |f: &dyn Fn(usize, usize) -> Q| {
            let mut v = Vec::new();
            for a in 1..=d {
                for b in 1..=d {
                    let x = f(a, b);
                    if !x.is_zero() {
                        v.push((a, b, x));
                    }
                }
            }
            v
        };
        let lower = nonzero(&|a, b| form.lower(a, b).clone());
        let upper = nonzero(&|a, b| form.upper(a, b).clone());
        Ok(SpAction {
            ctx,
            form,
            lower,
            upper,
        })
    }

    pub fn standard(n: usize, g: usize) -> Result<Self> {
        Self::new(Context::new(n, g)?, SymplecticForm::standard(n))
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn form(&self) -> &SymplecticForm {
        &self.form
    }

    fn bit(&self, column: usize, fiber: usize) -> usize {
        (column - 1) * self.ctx.dim_v() + fiber - 1
    }

    /// Action of a generator on one basis monomial.
    pub fn apply_to_monomial(&self, gen: SpgGenerator, m: Monomial) -> Vec<(Monomial, Q)> {
        let mut out = Vec::new();
        let half = qr(1, 2);
        match gen {
            SpgGenerator::L(i, j) => {
                for (a, b, e) in &self.lower {
                    let x = Monomial(1 << self.bit(i, *a));
                    let y = Monomial(1 << self.bit(j, *b));
                    let Some((xy, s1)) = x.wedge(&y) else { continue };
                    let Some((r, s2)) = xy.wedge(&m) else { continue };
                    let c = e * &half;
                    out.push((r, if s1 ^ s2 { -c } else { c }));
                }
            }
            SpgGenerator::Lambda(i, j) => {
                for (a, b, e) in &self.upper {
                    let Some((m1, s1)) = m.interior(self.bit(j, *b)) else { continue };
                    let Some((r, s2)) = m1.interior(self.bit(i, *a)) else { continue };
                    let c = e * &half;
                    out.push((r, if s1 ^ s2 { -c } else { c }));
                }
            }
            SpgGenerator::H(i, j) => {
                for f in 1..=self.ctx.dim_v() {
                    let Some((m1, s1)) = m.interior(self.bit(i, f)) else { continue };
                    let x = Monomial(1 << self.bit(j, f));
                    let Some((r, s2)) = x.wedge(&m1) else { continue };
                    out.push((r, if s1 ^ s2 { -Q::one() } else { Q::one() }));
                }
            }
        }
        out
    }

    pub fn apply_generator(&self, gen: SpgGenerator, a: &Multivector) -> Result<Multivector> {
        self.ctx.check(&a.context())?;
        gen.check(self.ctx.g)?;
        let mut out = Multivector::zero(self.ctx);
        for (m, c) in a.terms() {
            for (r, e) in self.apply_to_monomial(gen, *m) {
                out.add_term(r, e * c);
            }
        }
        Ok(out)
    }

    /// Derivation Σ_i Σ_{I,K} X_KI v^K_i ∧ i^i_I on one monomial.
    pub fn spv_on_monomial(&self, x: &SpVGenerator, m: Monomial) -> Vec<(Monomial, Q)> {
        let d = self.ctx.dim_v();
        let mut out = Vec::new();
        for bit in m.bits() {
            let id = self.ctx.generator_at(bit);
            let (m1, s1) = m.interior(bit).expect("bit present");
            for k in 1..=d {
                let c = &x.matrix[k - 1][id.fiber - 1];
                if c.is_zero() {
                    continue;
                }
                let y = Monomial(1 << self.bit(id.column, k));
                let Some((r, s2)) = y.wedge(&m1) else { continue };
                out.push((r, if s1 ^ s2 { -c.clone() } else { c.clone() }));
            }
        }
        out
    }

    pub fn apply_spv(&self, x: &SpVGenerator, a: &Multivector) -> Result<Multivector> {
        self.ctx.check(&a.context())?;
        if x.matrix.len() != self.ctx.dim_v() {
            return Err(Error::NotSymplecticAlgebra("matrix size does not match 2n".into()));
        }
        let mut out = Multivector::zero(self.ctx);
        for (m, c) in a.terms() {
            for (r, e) in self.spv_on_monomial(x, *m) {
                out.add_term(r, e * c);
            }
        }
        Ok(out)
    }

    pub fn apply_letter(&self, l: &Letter, a: &Multivector) -> Result<Multivector> {
        match l {
            Letter::Spg(g) => self.apply_generator(*g, a),
            Letter::SpV(x) => self.apply_spv(x, a),
        }
    }

    pub fn apply_expr(&self, e: &OperatorExpr, a: &Multivector) -> Result<Multivector> {
        let mut out = Multivector::zero(self.ctx);
        for (c, word) in &e.terms {
            let mut v = a.clone();
            for l in word.iter().rev() {
                if v.is_zero() {
                    break;
                }
                v = self.apply_letter(l, &v)?;
            }
            out = out.add(&v.scale(c))?;
        }
        Ok(out)
    }

    /// Whether `e` vanishes on every basis monomial.
    pub fn vanishes_on_basis(&self, e: &OperatorExpr) -> Result<bool> {
        guard(
            "exhaustive basis check 2ng",
            self.ctx.num_generators() as u128,
            MAX_EXHAUSTIVE_GENERATORS as u128,
        )?;
        let basis = self.ctx.basis()?;
        let results: Result<Vec<bool>> = basis
            .par_iter()
            .map(|m| {
                let v = Multivector::monomial(self.ctx, *m, Q::one());
                Ok(self.apply_expr(e, &v)?.is_zero())
            })
            .collect();
        Ok(results?.into_iter().all(|b| b))
    }

    /// exp(t·X) for nilpotent X, expanded until the series terminates.
    fn exp_apply(&self, gen: SpgGenerator, t: &Q, a: &Multivector) -> Result<Multivector> {
        let mut out = a.clone();
        let mut term = a.clone();
        let mut k = 0i64;
        while !term.is_zero() {
            k += 1;
            if k as usize > self.ctx.num_generators() + 2 {
                return Err(Error::NotSymplecticAlgebra(format!("{gen} is not nilpotent here")));
            }
            term = self.apply_generator(gen, &term)?.scale(&(t / q(k)));
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Right action: factors are applied in list order.
    pub fn apply_group_element(&self, u: &GroupElementFactored, a: &Multivector) -> Result<Multivector> {
        self.ctx.check(&a.context())?;
        let mut v = a.clone();
        for f in &u.factors {
            v = match f {
                GroupFactor::ExpL { i, j, t } => self.exp_apply(SpgGenerator::l(*i, *j), t, &v)?,
                GroupFactor::ExpLambda { i, j, t } => {
                    self.exp_apply(SpgGenerator::lambda(*i, *j), t, &v)?
                }
                GroupFactor::Torus(y) => self.apply_torus(y, &v)?,
            };
        }
        Ok(v)
    }

    /// Multiplies degree p̲ by Π y_i^{p_i - n}.
    pub fn apply_torus(&self, y: &[Q], a: &Multivector) -> Result<Multivector> {
        if y.len() != self.ctx.g || y.iter().any(|x| x.is_zero()) {
            return Err(Error::IndexOutOfRange(format!(
                "torus needs {} nonzero eigenvalues",
                self.ctx.g
            )));
        }
        let n = self.ctx.n as i64;
        let mut out = Multivector::zero(self.ctx);
        for (m, c) in a.terms() {
            let p = m.multidegree(&self.ctx);
            let mut s = c.clone();
            for (yi, pi) in y.iter().zip(&p.degrees) {
                s *= rational::pow(yi, *pi as i64 - n);
            }
            out.add_term(*m, s);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupFactor {
    ExpL { i: usize, j: usize, t: Q },
    ExpLambda { i: usize, j: usize, t: Q },
    Torus(Vec<Q>),
}

/// A group element as an ordered product of factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupElementFactored {
    pub factors: Vec<GroupFactor>,
}

impl GroupElementFactored {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn then(mut self, f: GroupFactor) -> Self {
        self.factors.push(f);
        self
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &GroupElementFactored) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        GroupElementFactored { factors }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationResult {
    pub relation: String,
    pub residual_norm_zero: bool,
}

pub type RelationReport = Vec<RelationResult>;

fn delta(a: usize, b: usize) -> Q {
    if a == b {
        Q::one()
    } else {
        Q::zero()
    }
}

fn term(c: Q, g: SpgGenerator) -> OperatorExpr {
    if c.is_zero() {
        OperatorExpr::zero()
    } else {
        OperatorExpr::gen(g).scaled(&c)
    }
}

/// One identity `lhs = rhs`, named for reports.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub lhs: OperatorExpr,
    pub rhs: OperatorExpr,
}

impl Relation {
    pub fn residual(&self) -> OperatorExpr {
        self.lhs.clone().minus(self.rhs.clone())
    }
}

/// Every commutator identity of the sp(g) algebra, one per ordered index choice.
pub fn sp_relations(n: usize, g: usize) -> Vec<Relation> {
    let nq = q(n as i64);
    let quarter = qr(1, 4);
    let mut out = Vec::new();
    let sym: Vec<(usize, usize)> = (1..=g).flat_map(|i| (i..=g).map(move |j| (i, j))).collect();
    let full: Vec<(usize, usize)> = (1..=g).flat_map(|i| (1..=g).map(move |j| (i, j))).collect();
    let c = |a: SpgGenerator, b: SpgGenerator| {
        OperatorExpr::commutator(&OperatorExpr::gen(a), &OperatorExpr::gen(b))
    };

    for &(i, j) in &sym {
        for &(k, l) in &sym {
            let scalar = &nq / q(2) * (delta(i, l) * delta(j, k) + delta(i, k) * delta(j, l));
            let rhs = OperatorExpr::scalar(scalar).minus(
                term(delta(i, k), SpgGenerator::h(j, l))
                    .plus(term(delta(i, l), SpgGenerator::h(j, k)))
                    .plus(term(delta(j, k), SpgGenerator::h(i, l)))
                    .plus(term(delta(j, l), SpgGenerator::h(i, k)))
                    .scaled(&quarter),
            );
            out.push(Relation {
                name: format!("[{}, {}]", SpgGenerator::lambda(i, j), SpgGenerator::l(k, l)),
                lhs: c(SpgGenerator::lambda(i, j), SpgGenerator::l(k, l)),
                rhs,
            });
        }
    }
    for &(k, l) in &full {
        for &(i, j) in &sym {
            let rhs = term(delta(k, i), SpgGenerator::l(l, j)).plus(term(delta(k, j), SpgGenerator::l(i, l)));
            out.push(Relation {
                name: format!("[{}, {}]", SpgGenerator::h(k, l), SpgGenerator::l(i, j)),
                lhs: c(SpgGenerator::h(k, l), SpgGenerator::l(i, j)),
                rhs,
            });
        }
    }
    for &(k, l) in &full {
        for &(i, j) in &sym {
            let rhs = term(-delta(i, l), SpgGenerator::lambda(k, j))
                .plus(term(-delta(j, l), SpgGenerator::lambda(i, k)));
            out.push(Relation {
                name: format!("[{}, {}]", SpgGenerator::h(k, l), SpgGenerator::lambda(i, j)),
                lhs: c(SpgGenerator::h(k, l), SpgGenerator::lambda(i, j)),
                rhs,
            });
        }
    }
    for (x, &(i, j)) in full.iter().enumerate() {
        for &(k, l) in &full[x + 1..] {
            let rhs = term(delta(i, l), SpgGenerator::h(k, j)).plus(term(-delta(k, j), SpgGenerator::h(i, l)));
            out.push(Relation {
                name: format!("[{}, {}]", SpgGenerator::h(i, j), SpgGenerator::h(k, l)),
                lhs: c(SpgGenerator::h(i, j), SpgGenerator::h(k, l)),
                rhs,
            });
        }
    }
    for (x, &(i, j)) in sym.iter().enumerate() {
        for &(k, l) in &sym[x + 1..] {
            for mk in [SpgGenerator::l as fn(usize, usize) -> SpgGenerator, SpgGenerator::lambda] {
                out.push(Relation {
                    name: format!("[{}, {}]", mk(i, j), mk(k, l)),
                    lhs: c(mk(i, j), mk(k, l)),
                    rhs: OperatorExpr::zero(),
                });
            }
        }
    }
    out
}

/// Evaluates every sp(g) relation on the full basis.
pub fn check_sp_relations_with(action: &SpAction) -> Result<RelationReport> {
    let ctx = action.context();
    guard(
        "exhaustive basis check 2ng",
        ctx.num_generators() as u128,
        MAX_EXHAUSTIVE_GENERATORS as u128,
    )?;
    sp_relations(ctx.n, ctx.g)
        .into_par_iter()
        .map(|r| {
            Ok(RelationResult {
                residual_norm_zero: action.vanishes_on_basis(&r.residual())?,
                relation: format!("{} = {}", r.name, describe(&r.rhs)),
            })
        })
        .collect()
}

pub fn check_sp_relations(n: usize, g: usize) -> Result<RelationReport> {
    check_sp_relations_with(&SpAction::standard(n, g)?)
}

fn describe(e: &OperatorExpr) -> String {
    if e.terms.is_empty() {
        return "0".into();
    }
    e.terms
        .iter()
        .map(|(c, w)| {
            let word: Vec<String> = w
                .iter()
                .map(|l| match l {
                    Letter::Spg(g) => g.to_string(),
                    Letter::SpV(_) => "X".into(),
                })
                .collect();
            if word.is_empty() {
                rational::to_string(c)
            } else {
                format!("({}) {}", rational::to_string(c), word.join(" "))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Checks [X, G] = 0 for X in the sp(V) spanning set and every sp(g) generator.
pub fn check_commuting_actions(action: &SpAction) -> Result<RelationReport> {
    let ctx = action.context();
    guard(
        "exhaustive basis check 2ng",
        ctx.num_generators() as u128,
        MAX_EXHAUSTIVE_GENERATORS as u128,
    )?;
    let xs = SpVGenerator::spanning_set(action.form());
    let gens = SpgGenerator::all(ctx.g);
    let pairs: Vec<(usize, SpgGenerator)> = (0..xs.len())
        .flat_map(|a| gens.iter().map(move |g| (a, *g)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(a, gen)| {
            let e = OperatorExpr::commutator(
                &OperatorExpr::letter(Letter::SpV(xs[a].clone())),
                &OperatorExpr::gen(gen),
            );
            Ok(RelationResult {
                relation: format!("[X_{}, {}] = 0", a + 1, gen),
                residual_norm_zero: action.vanishes_on_basis(&e)?,
            })
        })
        .collect()
}

/// Invariants of one degree block.
#[derive(Clone, Debug)]
pub struct InvariantBlock {
    pub degree: MultiDegree,
    pub basis: Vec<Multivector>,
}

impl InvariantBlock {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Joint kernel of the sp(V) spanning set, block by block; blocks of dimension 0 are omitted.
pub fn invariant_subspace_with(action: &SpAction) -> Result<Vec<InvariantBlock>> {
    let ctx = action.context();
    guard(
        "invariant subspace 2ng",
        ctx.num_generators() as u128,
        MAX_EXHAUSTIVE_GENERATORS as u128,
    )?;
    let xs = SpVGenerator::spanning_set(action.form());
    let blocks: Vec<InvariantBlock> = MultiDegree::all(&ctx)
        .into_par_iter()
        .map(|deg| {
            let cols = ctx.basis_of_degree(&deg);
            let index: BTreeMap<Monomial, usize> =
                cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut basis = EchelonBasis::new();
            for x in &xs {
                // Row per output monomial: coefficient of that monomial in X·m, over columns m.
                let mut rows: BTreeMap<Monomial, Vec<(usize, Q)>> = BTreeMap::new();
                for (ci, m) in cols.iter().enumerate() {
                    for (r, c) in action.spv_on_monomial(x, *m) {
                        rows.entry(r).or_default().push((ci, c));
                    }
                }
                for (_, r) in rows {
                    basis.insert(SparseRow::from_rationals(r));
                }
            }
            let kernel = basis
                .nullspace(cols.len())
                .into_iter()
                .map(|v| {
                    let mut mv = Multivector::zero(ctx);
                    for (m, i) in &index {
                        mv.add_term(*m, v[*i].clone());
                    }
                    mv
                })
                .collect();
            InvariantBlock {
                degree: deg,
                basis: kernel,
            }
        })
        .filter(|b| b.dim() > 0)
        .collect();
    Ok(blocks)
}

pub fn invariant_subspace(n: usize, g: usize) -> Result<Vec<InvariantBlock>> {
    invariant_subspace_with(&SpAction::standard(n, g)?)
}

/// Invariant dimension per total degree.
pub fn invariant_total_degree_dims(blocks: &[InvariantBlock]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for b in blocks {
        *out.entry(b.degree.total()).or_insert(0) += b.dim();
    }
    out
}
