//! Rational combinations of canonical graphs for a fixed context (g, n).

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::graph::{canonicalize, CanonGraph, MarkedGraph};
use crate::error::{Error, Result};
use crate::rational::{self, q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVector {
    g: usize,
    n: usize,
    /// When set, every circle is replaced by the scalar -2n on insertion.
    evaluate_circles: bool,
    terms: BTreeMap<CanonGraph, Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphTermJson {
    pub graph: MarkedGraph,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVectorJson {
    pub g: usize,
    pub n: usize,
    pub terms: Vec<GraphTermJson>,
}

impl GraphVector {
    pub fn zero(g: usize, n: usize) -> Self {
        GraphVector {
            g,
            n,
            evaluate_circles: true,
            terms: BTreeMap::new(),
        }
    }

    /// A vector that keeps circles as components.
    pub fn zero_keeping_circles(g: usize, n: usize) -> Self {
        GraphVector {
            evaluate_circles: false,
            ..Self::zero(g, n)
        }
    }

    pub fn from_graph(g: usize, n: usize, graph: &MarkedGraph) -> Result<Self> {
        let mut v = Self::zero(g, n);
        v.add_graph(graph, Q::from_integer(1.into()))?;
        Ok(v)
    }

    pub fn empty_graph(g: usize, n: usize) -> Self {
        let mut v = Self::zero(g, n);
        v.add_canon(CanonGraph::empty(), q(1));
        v
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn evaluates_circles(&self) -> bool {
        self.evaluate_circles
    }

    pub fn like(&self) -> Self {
        GraphVector {
            terms: BTreeMap::new(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonGraph, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, c: &CanonGraph) -> Q {
        self.terms.get(c).cloned().unwrap_or_else(Q::zero)
    }

    fn check_marks(&self, c: &CanonGraph) -> Result<()> {
        if c.max_mark() as usize > self.g {
            return Err(Error::IndexOutOfRange(format!(
                "leg marking {} with g={}",
                c.max_mark(),
                self.g
            )));
        }
        Ok(())
    }

    /// Adds an already canonical graph with positive orientation.
    pub fn add_canon(&mut self, c: CanonGraph, coef: Q) {
        if coef.is_zero() {
            return;
        }
        let (c, coef) = if self.evaluate_circles && c.circles > 0 {
            let s = rational::pow(&q(-2 * self.n as i64), c.circles as i64);
            (c.without_circles(), coef * s)
        } else {
            (c, coef)
        };
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&c) {
            Some(v) => {
                *v += coef;
                if v.is_zero() {
                    self.terms.remove(&c);
                }
            }
            None => {
                self.terms.insert(c, coef);
            }
        }
    }

    pub fn add_graph(&mut self, graph: &MarkedGraph, coef: Q) -> Result<()> {
        if let Some((c, sign)) = canonicalize(graph)? {
            self.check_marks(&c)?;
            self.add_canon(c, coef * q(sign as i64));
        }
        Ok(())
    }

    fn same_context(&self, other: &GraphVector) -> Result<()> {
        if self.g != other.g || self.n != other.n {
            return Err(Error::ContextMismatch {
                left_n: self.n,
                left_g: self.g,
                right_n: other.n,
                right_g: other.g,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GraphVector) -> Result<GraphVector> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (c, x) in &other.terms {
            out.add_canon(c.clone(), x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GraphVector) -> Result<GraphVector> {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, s: &Q) -> GraphVector {
        let mut out = self.like();
        for (c, x) in &self.terms {
            out.add_canon(c.clone(), x * s);
        }
        out
    }

    /// Disjoint union, bilinear in both arguments.
    pub fn union(&self, other: &GraphVector) -> Result<GraphVector> {
        self.same_context(other)?;
        let mut out = self.like();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut c = a.clone();
                c.cores.extend(b.cores.iter().cloned());
                c.cores.sort();
                c.chords.extend(b.chords.iter().copied());
                c.chords.sort_unstable();
                c.circles += b.circles;
                out.add_canon(c, x * y);
            }
        }
        Ok(out)
    }

    /// Split by leg profile.
    pub fn by_profile(&self) -> BTreeMap<Vec<usize>, Vec<(&CanonGraph, &Q)>> {
        let mut out: BTreeMap<Vec<usize>, Vec<(&CanonGraph, &Q)>> = BTreeMap::new();
        for (c, x) in &self.terms {
            out.entry(c.profile(self.g)).or_default().push((c, x));
        }
        out
    }

    pub fn to_json(&self) -> GraphVectorJson {
        GraphVectorJson {
            g: self.g,
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(c, x)| GraphTermJson {
                    graph: c.to_marked(),
                    coef: rational::to_string(x),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &GraphVectorJson) -> Result<GraphVector> {
        let mut v = GraphVector::zero(j.g, j.n);
        for t in &j.terms {
            v.add_graph(&t.graph, rational::parse(&t.coef)?)?;
        }
        Ok(v)
    }

    pub fn describe(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(c, x)| format!("({}) {}", rational::to_string(x), c.describe()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circles_evaluate() {
        let v = GraphVector::from_graph(1, 3, &MarkedGraph::circle()).unwrap();
        assert_eq!(v.coefficient(&CanonGraph::empty()), q(-6));
        let w = GraphVector::zero_keeping_circles(1, 3);
        let mut w = w;
        w.add_graph(&MarkedGraph::circle(), q(1)).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.coefficient(&CanonGraph::empty()), q(0));
    }

    #[test]
    fn as_relation_cancels() {
        let t = MarkedGraph::theta();
        let mut v = GraphVector::zero(1, 1);
        v.add_graph(&t, q(1)).unwrap();
        v.add_graph(&t.flipped(1), q(1)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn context_mismatch() {
        let a = GraphVector::empty_graph(1, 1);
        let b = GraphVector::empty_graph(2, 1);
        assert!(matches!(a.add(&b), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn marks_checked_against_g() {
        assert!(GraphVector::from_graph(1, 1, &MarkedGraph::chord(1, 2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut v = GraphVector::zero(3, 1);
        v.add_graph(&MarkedGraph::tripod(1, 2, 3), q(2)).unwrap();
        v.add_graph(&MarkedGraph::chord(3, 3), q(-1)).unwrap();
        let j = v.to_json();
        let back = GraphVector::from_json(&j).unwrap();
        assert_eq!(back, v);
    }
}
