//! The sp(g) action on graph spaces.
//!
//! L_ij adjoins a chord marked (i, j); h^i_j relabels one i-leg as j, summed
//! over legs; Λ^ij removes a pair of legs marked i and j and joins the two
//! edges they ended, with weight -1/2 when i = j and -1/4 otherwise.

use num_traits::Zero;

use super::graph::{CanonGraph, Leg, MarkedGraph, Mark};
use super::vector::GraphVector;
use crate::error::Result;
use crate::rational::{qr, Q};
use crate::spops::{Letter, OperatorExpr, SpgGenerator};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphActionConfig {
    /// Weight of Λ^ii on one unordered pair of i-legs.
    pub lambda_same: Q,
    /// Weight of Λ^ij (i ≠ j) on one (i-leg, j-leg) pair.
    pub lambda_mixed: Q,
}

impl Default for GraphActionConfig {
    fn default() -> Self {
        GraphActionConfig {
            lambda_same: qr(-1, 2),
            lambda_mixed: qr(-1, 4),
        }
    }
}

/// Removes legs `a` and `b` and joins the edges they ended.
fn contract(graph: &MarkedGraph, a: usize, b: usize) -> MarkedGraph {
    let (ha, hb) = (graph.legs[a].half_edge, graph.legs[b].half_edge);
    let mut out = graph.clone();
    out.legs = graph
        .legs
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != a && k != b)
        .map(|(_, l)| *l)
        .collect();
    let pa = graph.partner_of(ha).expect("leg is paired");
    let pb = graph.partner_of(hb).expect("leg is paired");
    out.pairs.retain(|p| !p.contains(&ha) && !p.contains(&hb));
    if pa == hb {
        out.circles += 1;
    } else {
        out.pairs.push([pa, pb]);
    }
    out
}

fn relabel(graph: &MarkedGraph, leg: usize, to: Mark) -> MarkedGraph {
    let mut out = graph.clone();
    out.legs[leg] = Leg {
        half_edge: out.legs[leg].half_edge,
        mark: to,
    };
    out
}

/// Adds `coef · gen(c)` into `out`.
pub fn act_on_canon(
    gen: SpgGenerator,
    c: &CanonGraph,
    coef: &Q,
    cfg: &GraphActionConfig,
    out: &mut GraphVector,
) -> Result<()> {
    gen.check(out.g())?;
    match gen {
        SpgGenerator::L(i, j) => {
            out.add_canon(c.with_chord(i as Mark, j as Mark), coef.clone());
        }
        SpgGenerator::H(i, j) => {
            let m = c.to_marked();
            for (k, leg) in m.legs.iter().enumerate() {
                if leg.mark as usize == i {
                    out.add_graph(&relabel(&m, k, j as Mark), coef.clone())?;
                }
            }
        }
        SpgGenerator::Lambda(i, j) => {
            let m = c.to_marked();
            let w = if i == j { &cfg.lambda_same } else { &cfg.lambda_mixed };
            let w = w * coef;
            if w.is_zero() {
                return Ok(());
            }
            for a in 0..m.legs.len() {
                if m.legs[a].mark as usize != i {
                    continue;
                }
                let start = if i == j { a + 1 } else { 0 };
                for b in start..m.legs.len() {
                    if b == a || m.legs[b].mark as usize != j {
                        continue;
                    }
                    out.add_graph(&contract(&m, a, b), w.clone())?;
                }
            }
        }
    }
    Ok(())
}

pub fn graph_action_with(gen: SpgGenerator, v: &GraphVector, cfg: &GraphActionConfig) -> Result<GraphVector> {
    let mut out = v.like();
    for (c, x) in v.terms() {
        act_on_canon(gen, c, x, cfg, &mut out)?;
    }
    Ok(out)
}

pub fn graph_action(gen: SpgGenerator, v: &GraphVector) -> Result<GraphVector> {
    graph_action_with(gen, v, &GraphActionConfig::default())
}

/// Applies an operator expression; only sp(g) letters act on graphs.
pub fn apply_expr_with(e: &OperatorExpr, v: &GraphVector, cfg: &GraphActionConfig) -> Result<GraphVector> {
    let mut out = v.like();
    for (c, word) in &e.terms {
        if c.is_zero() {
            continue;
        }
        let mut cur = v.scale(c);
        for l in word.iter().rev() {
            let Letter::Spg(gen) = l else {
                return Err(Error::IndexOutOfRange("sp(V) letters do not act on graphs".into()));
            };
            cur = graph_action_with(*gen, &cur, cfg)?;
            if cur.is_zero() {
                break;
            }
        }
        out = out.add(&cur)?;
    }
    Ok(out)
}

/// Canonical graph of a chord diagram, used in tests and examples.
pub fn chord_diagram(chords: &[(usize, usize)]) -> CanonGraph {
    chords
        .iter()
        .fold(CanonGraph::empty(), |c, &(a, b)| c.with_chord(a as Mark, b as Mark))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::spops::sp_relations;

    #[test]
    fn lambda_on_single_chord() {
        for n in 1..4 {
            let e = GraphVector::empty_graph(1, n);
            let l = graph_action(SpgGenerator::l(1, 1), &e).unwrap();
            let back = graph_action(SpgGenerator::lambda(1, 1), &l).unwrap();
            assert_eq!(back, e.scale(&q(n as i64)));
        }
    }

    #[test]
    fn lambda_mixed_chord() {
        let e = GraphVector::empty_graph(2, 1);
        let l = graph_action(SpgGenerator::l(1, 2), &e).unwrap();
        let back = graph_action(SpgGenerator::lambda(1, 2), &l).unwrap();
        assert_eq!(back, e.scale(&qr(1, 2)));
    }

    #[test]
    fn relabel_kills_repeated_tripod() {
        let v = GraphVector::from_graph(3, 1, &MarkedGraph::tripod(1, 2, 3)).unwrap();
        let w = graph_action(SpgGenerator::h(1, 2), &v).unwrap();
        assert!(w.is_zero());
        let w = graph_action(SpgGenerator::h(1, 1), &v).unwrap();
        assert_eq!(w, v);
    }

    #[test]
    fn relations_hold_on_small_graphs() {
        let samples = [
            MarkedGraph::empty(),
            MarkedGraph::chord(1, 2),
            MarkedGraph::tripod(1, 2, 2),
            MarkedGraph::tripod(1, 1, 2).disjoint_union(&MarkedGraph::chord(2, 2)),
            MarkedGraph::theta().disjoint_union(&MarkedGraph::chord(1, 1)),
        ];
        for n in 1..3 {
            for s in &samples {
                let mut v = GraphVector::zero(2, n);
                v.add_graph(s, q(1)).unwrap();
                for r in sp_relations(n, 2) {
                    let res = apply_expr_with(&r.residual(), &v, &GraphActionConfig::default()).unwrap();
                    assert!(res.is_zero(), "{} on {}", r.name, v.describe());
                }
            }
        }
    }
}
