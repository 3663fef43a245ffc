//! Relation families on graph spaces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::enumerate::enumerate_graphs;
use super::graph::{CanonGraph, MarkedGraph, Mark};
use super::vector::GraphVector;
use super::{MAX_GRAPH_G, MAX_LEGS, MAX_TRIVALENT};
use crate::error::{guard, Result};
use crate::pn::{enumerate_pairings, multisets};
use crate::rational::q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationFamily {
    /// Reversing the cyclic order at one vertex negates the graph.
    #[serde(rename = "AS")]
    As,
    #[serde(rename = "IHX")]
    Ihx,
    /// Insertion of the symmetrized (n+1)-fold chord product.
    #[serde(rename = "P")]
    Pn,
    /// A circle component equals -2n.
    #[serde(rename = "O")]
    On,
    /// Every graph of internal degree above 2n vanishes.
    #[serde(rename = "cutoff")]
    Cutoff,
}

/// `G + G'` for each vertex, where G' reverses that vertex.
pub fn as_relations(c: &CanonGraph, g: usize, n: usize) -> Result<Vec<GraphVector>> {
    let m = c.to_marked();
    (0..m.trivalent.len())
        .map(|v| {
            let mut out = GraphVector::zero_keeping_circles(g, n);
            out.add_graph(&m, q(1))?;
            out.add_graph(&m.flipped(v), q(1))?;
            Ok(out)
        })
        .collect()
}

/// Three-term relations, one per internal edge joining distinct vertices.
///
/// For an edge e with u = (e, a, b) and v = (e, c, d) the terms are the graph
/// itself, u = (e, b, c), v = (e, a, d), and u = (e, c, a), v = (e, b, d).
pub fn ihx_relations(c: &CanonGraph, g: usize, n: usize) -> Result<Vec<GraphVector>> {
    let m = c.to_marked();
    let mut slot: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (v, hs) in m.trivalent.iter().enumerate() {
        for (s, &h) in hs.iter().enumerate() {
            slot.insert(h, (v, s));
        }
    }
    let mut out = Vec::new();
    for &[a, b] in &m.pairs {
        let (Some(&(u, su)), Some(&(v, sv))) = (slot.get(&a), slot.get(&b)) else {
            continue;
        };
        if u == v {
            continue;
        }
        let ru = m.trivalent[u];
        let rv = m.trivalent[v];
        let (eu, pa, pb) = (ru[su], ru[(su + 1) % 3], ru[(su + 2) % 3]);
        let (ev, pc, pd) = (rv[sv], rv[(sv + 1) % 3], rv[(sv + 2) % 3]);
        let mut rel = GraphVector::zero(g, n);
        rel.add_canon(c.clone(), q(1));
        for (x, y, z, w) in [(pb, pc, pa, pd), (pc, pa, pb, pd)] {
            let mut t = m.clone();
            t.trivalent[u] = [eu, x, y];
            t.trivalent[v] = [ev, z, w];
            rel.add_graph(&t, q(1))?;
        }
        out.push(rel);
    }
    Ok(out)
}

/// G ⊔ Σ over pairings of the word's 2n+2 markings of the resulting chords.
pub fn p_insertion(c: &CanonGraph, word: &[usize], g: usize, n: usize) -> Result<GraphVector> {
    let mut out = GraphVector::zero(g, n);
    for pairing in enumerate_pairings(word.len() / 2)? {
        let mut x = c.clone();
        for &(a, b) in &pairing.0 {
            x = x.with_chord(word[a] as Mark, word[b] as Mark);
        }
        out.add_canon(x, q(1));
    }
    Ok(out)
}

/// G ⊔ O + 2n G, in a vector that keeps circles.
pub fn o_relation(c: &CanonGraph, g: usize, n: usize) -> Result<GraphVector> {
    let mut out = GraphVector::zero_keeping_circles(g, n);
    out.add_graph(&c.to_marked().disjoint_union(&MarkedGraph::circle()), q(1))?;
    out.add_canon(c.clone(), q(2 * n as i64));
    Ok(out)
}

pub(crate) fn check_sizes(g: usize, internal_degree: usize, legs: usize) -> Result<()> {
    guard("graph marking count g", g as u128, MAX_GRAPH_G as u128)?;
    guard("trivalent vertices", internal_degree as u128, MAX_TRIVALENT as u128)?;
    guard("graph legs", legs as u128, MAX_LEGS as u128)
}

/// Relations of one family among graphs with the given internal degree and leg profile.
pub fn generate_relations(
    family: RelationFamily,
    g: usize,
    n: usize,
    internal_degree: usize,
    leg_profile: &[usize],
) -> Result<Vec<GraphVector>> {
    if leg_profile.len() != g {
        return Err(crate::Error::IndexOutOfRange(format!(
            "leg profile of length {} with g={g}",
            leg_profile.len()
        )));
    }
    let legs: usize = leg_profile.iter().sum();
    check_sizes(g, internal_degree, legs)?;
    let all = enumerate_graphs(internal_degree, g, legs)?;
    let here = all.get(leg_profile).cloned().unwrap_or_default();
    let mut out = Vec::new();
    match family {
        RelationFamily::As => {
            for c in &here {
                out.extend(as_relations(c, g, n)?);
            }
        }
        RelationFamily::Ihx => {
            for c in &here {
                out.extend(ihx_relations(c, g, n)?);
            }
        }
        RelationFamily::On => {
            for c in &here {
                out.push(o_relation(c, g, n)?);
            }
        }
        RelationFamily::Cutoff => {
            if internal_degree > 2 * n {
                for c in &here {
                    let mut v = GraphVector::zero(g, n);
                    v.add_canon(c.clone(), q(1));
                    out.push(v);
                }
            }
        }
        RelationFamily::Pn => {
            let k = 2 * n + 2;
            let marks: Vec<usize> = (1..=g).collect();
            for word in multisets(&marks, k) {
                let mut rest = leg_profile.to_vec();
                let mut ok = true;
                for &w in &word {
                    if rest[w - 1] == 0 {
                        ok = false;
                        break;
                    }
                    rest[w - 1] -= 1;
                }
                if !ok {
                    continue;
                }
                for c in all.get(&rest).into_iter().flatten() {
                    out.push(p_insertion(c, &word, g, n)?);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::canonicalize;

    fn canon(m: &MarkedGraph) -> CanonGraph {
        canonicalize(m).unwrap().unwrap().0
    }

    #[test]
    fn theta_ihx_is_vacuous() {
        let t = canon(&MarkedGraph::theta());
        let rels = ihx_relations(&t, 1, 1).unwrap();
        assert_eq!(rels.len(), 3);
        assert!(rels.iter().all(|r| r.is_zero()));
    }

    #[test]
    fn as_family_is_vacuous_after_canonicalization() {
        let t = canon(&MarkedGraph::theta().disjoint_union(&MarkedGraph::chord(1, 2)));
        for r in as_relations(&t, 2, 1).unwrap() {
            assert!(r.is_zero());
        }
    }

    #[test]
    fn p_insertion_on_empty_graph() {
        let v = p_insertion(&CanonGraph::empty(), &[1, 1, 1, 1], 1, 1).unwrap();
        assert_eq!(v.len(), 1);
        let (_, c) = v.terms().next().unwrap();
        assert_eq!(*c, q(3));
    }

    #[test]
    fn cutoff_only_above_2n() {
        assert!(generate_relations(RelationFamily::Cutoff, 3, 1, 1, &[1, 1, 1]).unwrap().is_empty());
        assert_eq!(
            generate_relations(RelationFamily::Cutoff, 3, 1, 3, &[1, 1, 1]).unwrap().len(),
            generate_relations(RelationFamily::On, 3, 1, 3, &[1, 1, 1]).unwrap().len()
        );
    }
}
