//! Quotients of graph spaces by AS, IHX, O_n and the sp(g)-submodule generated
//! by chord insertion of P_{n+1}.
//!
//! Relations are homogeneous in the leg profile. L and h preserve the
//! insertion relations; Λ lowers the leg count by two, so the submodule is
//! obtained by processing profiles from the most legs down and adding the Λ
//! images of every higher relation space. Graphs with more than `max_legs`
//! legs are still generated, up to `max_legs + extra_legs`, so that relations
//! reaching the counted profiles through Λ are present.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::action::{act_on_canon, apply_expr_with, GraphActionConfig};
use super::enumerate::enumerate_graphs;
use super::graph::CanonGraph;
use super::relations::{check_sizes, ihx_relations, p_insertion};
use super::vector::GraphVector;
use super::MAX_QUOTIENT_LEGS;
use crate::error::{guard, Error, Result};
use crate::linalg::{EchelonBasis, SparseRow};
use crate::pn::multisets;
use crate::rational::{q, Q};
use crate::spops::{sp_relations, RelationReport, RelationResult, SpgGenerator};

pub const DEFAULT_EXTRA_LEGS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientOptions {
    /// Largest leg count counted in ranks; defaults to 2ng.
    pub max_legs: Option<usize>,
    /// Additional legs generated above `max_legs` for relations.
    pub extra_legs: usize,
    pub config: GraphActionConfig,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            max_legs: None,
            extra_legs: DEFAULT_EXTRA_LEGS,
            config: GraphActionConfig::default(),
        }
    }
}

/// B^n_{g,m} truncated to graphs with at most `cap` legs, with its relation spaces.
pub struct GraphQuotient {
    g: usize,
    n: usize,
    m: usize,
    max_legs: usize,
    cap: usize,
    config: GraphActionConfig,
    graphs: BTreeMap<Vec<usize>, Vec<CanonGraph>>,
    index: HashMap<CanonGraph, usize>,
    relations: BTreeMap<Vec<usize>, EchelonBasis>,
}

fn row_of(v: &GraphVector, index: &HashMap<CanonGraph, usize>) -> Result<SparseRow> {
    let mut entries = Vec::with_capacity(v.len());
    for (c, x) in v.terms() {
        let Some(&i) = index.get(c) else {
            return Err(Error::MalformedGraph(format!(
                "graph {} lies outside the enumerated range",
                c.describe()
            )));
        };
        entries.push((i, x.clone()));
    }
    Ok(SparseRow::from_rationals(entries))
}

impl GraphQuotient {
    pub fn build(g: usize, n: usize, m: usize, opts: &QuotientOptions) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange("n must be positive".into()));
        }
        let max_legs = opts.max_legs.unwrap_or(2 * n * g);
        guard("counted graph legs", max_legs as u128, MAX_QUOTIENT_LEGS as u128)?;
        let cap = max_legs + opts.extra_legs;
        check_sizes(g, m, cap)?;
        let mut q = GraphQuotient {
            g,
            n,
            m,
            max_legs,
            cap,
            config: opts.config.clone(),
            graphs: BTreeMap::new(),
            index: HashMap::new(),
            relations: BTreeMap::new(),
        };
        if m > 2 * n {
            // Everything vanishes; no graphs are kept and every vector is a relation.
            return Ok(q);
        }
        q.graphs = enumerate_graphs(m, g, cap)?;
        for list in q.graphs.values() {
            for (i, c) in list.iter().enumerate() {
                q.index.insert(c.clone(), i);
            }
        }
        q.close_relations()?;
        Ok(q)
    }

    fn base_relations(&self) -> Result<BTreeMap<Vec<usize>, Vec<GraphVector>>> {
        let (g, n) = (self.g, self.n);
        let k = 2 * n + 2;
        let marks: Vec<usize> = (1..=g).collect();
        let words = multisets(&marks, k);
        let all: Vec<&CanonGraph> = self.graphs.values().flatten().collect();
        let rels: Vec<Vec<GraphVector>> = all
            .par_iter()
            .map(|c| {
                let mut out = ihx_relations(c, g, n)?;
                if c.leg_count() + k <= self.cap {
                    for w in &words {
                        out.push(p_insertion(c, w, g, n)?);
                    }
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        let mut by: BTreeMap<Vec<usize>, Vec<GraphVector>> = BTreeMap::new();
        for r in rels.into_iter().flatten() {
            let Some(p) = r.terms().next().map(|(c, _)| c.profile(g)) else { continue };
            by.entry(p).or_default().push(r);
        }
        Ok(by)
    }

    fn close_relations(&mut self) -> Result<()> {
        let mut base = self.base_relations()?;
        let mut levels: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for p in self.graphs.keys() {
            levels.entry(p.iter().sum()).or_default().push(p.clone());
        }
        for (_, profiles) in levels.into_iter().rev() {
            let jobs: Vec<(Vec<usize>, Vec<GraphVector>)> = profiles
                .into_iter()
                .map(|p| {
                    let b = base.remove(&p).unwrap_or_default();
                    (p, b)
                })
                .collect();
            let done: Vec<(Vec<usize>, EchelonBasis)> = jobs
                .into_par_iter()
                .map(|(p, b)| {
                    let e = self.relations_at(&p, b)?;
                    Ok((p, e))
                })
                .collect::<Result<_>>()?;
            self.relations.extend(done);
        }
        Ok(())
    }

    fn relations_at(&self, p: &[usize], base: Vec<GraphVector>) -> Result<EchelonBasis> {
        let mut e = EchelonBasis::new();
        let full = self.graphs[p].len();
        for r in &base {
            if e.rank() == full {
                break;
            }
            e.insert(row_of(r, &self.index)?);
        }
        for i in 1..=self.g {
            for j in i..=self.g {
                let mut up = p.to_vec();
                up[i - 1] += 1;
                up[j - 1] += 1;
                let Some(higher) = self.relations.get(&up) else { continue };
                let source = &self.graphs[&up];
                let gen = SpgGenerator::lambda(i, j);
                let mut cache: HashMap<usize, GraphVector> = HashMap::new();
                for row in higher.rows() {
                    if e.rank() == full {
                        return Ok(e);
                    }
                    let mut img = GraphVector::zero(self.g, self.n);
                    for (col, x) in row.entries() {
                        let part = match cache.get(col) {
                            Some(v) => v,
                            None => {
                                let mut v = GraphVector::zero(self.g, self.n);
                                act_on_canon(gen, &source[*col], &q(1), &self.config, &mut v)?;
                                cache.entry(*col).or_insert(v)
                            }
                        };
                        img = img.add(&part.scale(&Q::from_integer(x.clone())))?;
                    }
                    e.insert(row_of(&img, &self.index)?);
                }
            }
        }
        Ok(e)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn internal_degree(&self) -> usize {
        self.m
    }

    pub fn max_legs(&self) -> usize {
        self.max_legs
    }

    /// Dimension of the quotient in one leg profile.
    pub fn dim_at(&self, profile: &[usize]) -> usize {
        let total = self.graphs.get(profile).map_or(0, |v| v.len());
        let rank = self.relations.get(profile).map_or(0, |e| e.rank());
        total - rank
    }

    /// Nonzero quotient dimensions by profile, up to `max_legs` legs.
    pub fn profile_dims(&self) -> BTreeMap<Vec<usize>, usize> {
        self.graphs
            .keys()
            .filter(|p| p.iter().sum::<usize>() <= self.max_legs)
            .map(|p| (p.clone(), self.dim_at(p)))
            .filter(|(_, d)| *d > 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.profile_dims().values().sum()
    }

    /// No class survives with more than 2n legs of a single marking.
    pub fn marking_bound_holds(&self) -> bool {
        self.profile_dims().keys().all(|p| p.iter().all(|&x| x <= 2 * self.n))
    }

    /// Graphs whose classes form a basis of the counted part of the quotient.
    pub fn representatives(&self) -> Vec<CanonGraph> {
        let mut out = Vec::new();
        for (p, list) in &self.graphs {
            if p.iter().sum::<usize>() > self.max_legs {
                continue;
            }
            let pivots: std::collections::BTreeSet<usize> = self
                .relations
                .get(p)
                .map(|e| e.pivots().collect())
                .unwrap_or_default();
            for (i, c) in list.iter().enumerate() {
                if !pivots.contains(&i) {
                    out.push(c.clone());
                }
            }
        }
        out
    }

    /// Whether `v` lies in the relation space.
    pub fn is_relation(&self, v: &GraphVector) -> Result<bool> {
        if v.g() != self.g || v.n() != self.n {
            return Err(Error::ContextMismatch {
                left_n: self.n,
                left_g: self.g,
                right_n: v.n(),
                right_g: v.g(),
            });
        }
        for (p, terms) in v.by_profile() {
            if terms.iter().any(|(c, _)| c.internal_degree() != self.m || c.circles > 0) {
                return Err(Error::MalformedGraph("vector outside this graded piece".into()));
            }
            if self.m > 2 * self.n {
                continue;
            }
            if p.iter().sum::<usize>() > self.cap {
                return Err(Error::GuardExceeded {
                    what: "legs of a tested vector".into(),
                    requested: p.iter().sum::<usize>() as u128,
                    limit: self.cap as u128,
                });
            }
            let mut part = GraphVector::zero(self.g, self.n);
            for (c, x) in terms {
                part.add_canon(c.clone(), x.clone());
            }
            let row = row_of(&part, &self.index)?;
            let ok = self.relations.get(&p).is_some_and(|e| e.contains(&row)) || row.is_empty();
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every relation maps into the relation space under every generator,
    /// checked on profiles with at most `max_legs` legs.
    pub fn relations_preserved(&self) -> Result<bool> {
        let gens = SpgGenerator::all(self.g);
        let jobs: Vec<(&Vec<usize>, &EchelonBasis)> = self
            .relations
            .iter()
            .filter(|(p, _)| p.iter().sum::<usize>() <= self.max_legs)
            .collect();
        let bad = jobs.par_iter().any(|(p, e)| {
            let list = &self.graphs[*p];
            e.rows().any(|row| {
                let mut v = GraphVector::zero(self.g, self.n);
                for (col, x) in row.entries() {
                    v.add_canon(list[*col].clone(), Q::from_integer(x.clone()));
                }
                gens.iter().any(|&gen| {
                    let mut img = GraphVector::zero(self.g, self.n);
                    for (c, x) in v.terms() {
                        if act_on_canon(gen, c, x, &self.config, &mut img).is_err() {
                            return true;
                        }
                    }
                    !self.is_relation(&img).unwrap_or(false)
                })
            })
        });
        Ok(!bad)
    }
}

/// Rank of B^n_{g,m}, counting graphs with at most 2ng legs.
pub fn quotient_rank(g: usize, n: usize, m: usize) -> Result<usize> {
    Ok(GraphQuotient::build(g, n, m, &QuotientOptions::default())?.rank())
}

/// Evaluates every sp(g) relation on representatives of B^n_{g,m} for m ≤ 2n.
pub fn check_graph_relations(g: usize, n: usize, cfg: &GraphActionConfig) -> Result<RelationReport> {
    let opts = QuotientOptions {
        config: cfg.clone(),
        ..Default::default()
    };
    let quotients: Vec<GraphQuotient> = (0..=2 * n)
        .map(|m| GraphQuotient::build(g, n, m, &opts))
        .collect::<Result<_>>()?;
    let reps: Vec<(usize, CanonGraph)> = quotients
        .iter()
        .enumerate()
        .flat_map(|(m, qt)| qt.representatives().into_iter().map(move |c| (m, c)))
        .collect();
    sp_relations(n, g)
        .into_par_iter()
        .map(|r| {
            let res = r.residual();
            let mut ok = true;
            for (m, c) in &reps {
                let mut v = GraphVector::zero(g, n);
                v.add_canon(c.clone(), q(1));
                let img = apply_expr_with(&res, &v, cfg)?;
                if !quotients[*m].is_relation(&img)? {
                    ok = false;
                    break;
                }
            }
            Ok(RelationResult {
                relation: r.name.clone(),
                residual_norm_zero: ok,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HighestWeightResult {
    pub vector: String,
    pub weight: Vec<i64>,
    pub expected: Vec<i64>,
    pub nonzero: bool,
    pub raising_vanish: bool,
    /// For e_g only: L_gg^{n+1} e_g vanishes.
    pub lowering_truncates: Option<bool>,
    pub passed: bool,
}

/// Highest-weight data of e_g (internal degree 0) or of the tripod
/// D(g-2, g-1, g) (internal degree 1, g ≥ 3).
///
/// Raising operators are h^i_{i+1} (i < g) and Λ^gg; the Cartan element is
/// H_i = n - h^i_i.
pub fn highest_weight_check(
    g: usize,
    n: usize,
    internal_degree: usize,
    cfg: &GraphActionConfig,
) -> Result<HighestWeightResult> {
    let opts = QuotientOptions {
        config: cfg.clone(),
        ..Default::default()
    };
    let (name, v, expected) = match internal_degree {
        0 => ("e".to_string(), GraphVector::empty_graph(g, n), vec![n as i64; g]),
        1 if g >= 3 => {
            let d = super::MarkedGraph::tripod((g - 2) as u8, (g - 1) as u8, g as u8);
            let mut exp = vec![n as i64; g];
            for x in exp.iter_mut().skip(g - 3) {
                *x -= 1;
            }
            (
                format!("D({},{},{})", g - 2, g - 1, g),
                GraphVector::from_graph(g, n, &d)?,
                exp,
            )
        }
        _ => {
            return Err(Error::IndexOutOfRange(format!(
                "highest-weight candidates exist for internal degree 0, or 1 with g >= 3 (got {internal_degree}, g={g})"
            )))
        }
    };
    let act = |gen: SpgGenerator, x: &GraphVector| super::graph_action_with(gen, x, cfg);
    let qt = GraphQuotient::build(g, n, internal_degree, &opts)?;
    let nonzero = !qt.is_relation(&v)?;
    let mut raising_vanish = qt.is_relation(&act(SpgGenerator::lambda(g, g), &v)?)?;
    for i in 1..g {
        raising_vanish &= qt.is_relation(&act(SpgGenerator::h(i, i + 1), &v)?)?;
    }
    let (c0, x0) = v.terms().next().expect("candidate is a single graph");
    let mut weight = Vec::with_capacity(g);
    let mut eigen = true;
    for i in 1..=g {
        let hv = act(SpgGenerator::h(i, i), &v)?;
        let lam = q(n as i64) - hv.coefficient(c0) / x0;
        let resid = v.scale(&q(n as i64)).sub(&hv)?.sub(&v.scale(&lam))?;
        eigen &= qt.is_relation(&resid)?;
        weight.push(crate::rational::to_i64(&lam).unwrap_or(i64::MIN));
    }
    let lowering_truncates = if internal_degree == 0 {
        let mut y = v.clone();
        for _ in 0..=n {
            y = act(SpgGenerator::l(g, g), &y)?;
        }
        Some(qt.is_relation(&y)?)
    } else {
        None
    };
    let passed = nonzero && raising_vanish && eigen && weight == expected && lowering_truncates != Some(false);
    Ok(HighestWeightResult {
        vector: name,
        weight,
        expected,
        nonzero,
        raising_vanish,
        lowering_truncates,
        passed,
    })
}
