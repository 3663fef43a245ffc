use std::sync::OnceLock;

use proptest::prelude::*;
use skewsp::graphs::{
    apply_expr_with, canonicalize, enumerate_graphs, graph_action, highest_weight_check, quotient_rank,
    CanonGraph, GraphActionConfig, GraphVector, MarkedGraph,
};
use skewsp::rational::{q, Q};
use skewsp::spops::{sp_relations, SpgGenerator};

fn sample() -> &'static [CanonGraph] {
    static S: OnceLock<Vec<CanonGraph>> = OnceLock::new();
    S.get_or_init(|| {
        let mut out = Vec::new();
        for (m, g, legs) in [(0, 2, 4), (1, 3, 5), (2, 3, 6), (3, 2, 5)] {
            for v in enumerate_graphs(m, g, legs).unwrap().into_values() {
                out.extend(v);
            }
        }
        out
    })
}

/// Relabels half-edges by `perm`, reorders vertices, legs and pairs, and rotates each vertex.
fn scramble(gr: &MarkedGraph, seed: u64) -> MarkedGraph {
    let ids: Vec<usize> = gr
        .trivalent
        .iter()
        .flatten()
        .copied()
        .chain(gr.legs.iter().map(|l| l.half_edge))
        .collect();
    let mut target: Vec<usize> = ids.iter().map(|&h| h * 7 + 3).collect();
    let mut s = seed | 1;
    for i in (1..target.len()).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        target.swap(i, (s % (i as u64 + 1)) as usize);
    }
    let map = |h: usize| target[ids.iter().position(|&x| x == h).unwrap()];
    let mut out = gr.clone();
    for (k, t) in out.trivalent.iter_mut().enumerate() {
        let r = ((seed >> (2 * k)) % 3) as usize;
        let rotated = [t[r], t[(r + 1) % 3], t[(r + 2) % 3]];
        *t = rotated.map(map);
    }
    for l in out.legs.iter_mut() {
        l.half_edge = map(l.half_edge);
    }
    for p in out.pairs.iter_mut() {
        *p = if seed >> 40 & 1 == 1 { [map(p[1]), map(p[0])] } else { [map(p[0]), map(p[1])] };
    }
    let rot = (seed >> 20) as usize;
    if !out.trivalent.is_empty() {
        let len = out.trivalent.len();
        out.trivalent.rotate_left(rot % len);
    }
    out.pairs.reverse();
    out.legs.reverse();
    out
}

#[test]
fn theta_reversal_is_negative() {
    let (t, s) = canonicalize(&MarkedGraph::theta()).unwrap().unwrap();
    let (u, r) = canonicalize(&MarkedGraph::theta().flipped(0)).unwrap().unwrap();
    assert_eq!(t, u);
    assert_eq!(s, -r);
}

#[test]
fn tripod_with_repeated_marks_vanishes() {
    assert!(canonicalize(&MarkedGraph::tripod(1, 1, 2)).unwrap().is_none());
    assert!(canonicalize(&MarkedGraph::tripod(1, 2, 3)).unwrap().is_some());
}

#[test]
fn circle_evaluates_to_minus_two_n() {
    for n in 1..=3 {
        let v = GraphVector::from_graph(1, n, &MarkedGraph::circle().disjoint_union(&MarkedGraph::chord(1, 1))).unwrap();
        let w = GraphVector::from_graph(1, n, &MarkedGraph::chord(1, 1)).unwrap();
        assert_eq!(v, w.scale(&q(-2 * n as i64)));
    }
}

#[test]
fn generators_on_the_empty_graph() {
    for n in 1..=2 {
        let e = GraphVector::empty_graph(2, n);
        let l = graph_action(SpgGenerator::l(1, 1), &e).unwrap();
        assert_eq!(l, GraphVector::from_graph(2, n, &MarkedGraph::chord(1, 1)).unwrap());
        assert!(graph_action(SpgGenerator::lambda(1, 2), &e).unwrap().is_zero());
        let back = graph_action(SpgGenerator::lambda(1, 1), &l).unwrap();
        assert_eq!(back, e.scale(&q(n as i64)));
        assert_eq!(graph_action(SpgGenerator::h(1, 1), &e).unwrap(), e.scale(&q(0)));
    }
}

#[test]
fn quotient_ranks() {
    assert_eq!(quotient_rank(1, 1, 0).unwrap(), 2);
    assert_eq!(quotient_rank(2, 1, 0).unwrap(), 5);
    for g in 1..=3 {
        assert_eq!(quotient_rank(g, 1, 2).unwrap(), quotient_rank(g, 1, 0).unwrap(), "g={g}");
        assert_eq!(quotient_rank(g, 1, 3).unwrap(), 0);
    }
}

#[test]
fn highest_weights() {
    let cfg = GraphActionConfig::default();
    let e = highest_weight_check(2, 1, 0, &cfg).unwrap();
    assert!(e.passed);
    assert_eq!(e.weight, vec![1, 1]);
    let d = highest_weight_check(3, 1, 1, &cfg).unwrap();
    assert!(d.passed);
    assert_eq!(d.weight, vec![0, 0, 0]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_ignores_labels(i in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let c = i.get(sample());
        let m = c.to_marked();
        let (c0, s0) = canonicalize(&m).unwrap().unwrap();
        prop_assert_eq!(&c0, c);
        prop_assert_eq!(s0, 1);
        let (c1, s1) = canonicalize(&scramble(&m, seed)).unwrap().unwrap();
        prop_assert_eq!(&c1, c);
        prop_assert_eq!(s1, 1);
        if !m.trivalent.is_empty() {
            let v = (seed % m.trivalent.len() as u64) as usize;
            let (c2, s2) = canonicalize(&scramble(&m.flipped(v), seed.rotate_left(7))).unwrap().unwrap();
            prop_assert_eq!(&c2, c);
            prop_assert_eq!(s2, -1);
        }
    }

    #[test]
    fn json_round_trip(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), a in -9i64..=9, b in 1i64..=5) {
        let mut v = GraphVector::zero(3, 1);
        v.add_canon(i.get(sample()).clone(), q(a));
        v.add_canon(j.get(sample()).clone(), Q::new(1.into(), b.into()));
        let back = GraphVector::from_json(&v.to_json()).unwrap();
        prop_assert_eq!(back, v);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn algebra_relations_hold_on_graphs(i in any::<prop::sample::Index>(), n in 1usize..=2) {
        let c = i.get(sample());
        let g = (c.max_mark() as usize).max(2);
        let mut v = GraphVector::zero(g, n);
        v.add_canon(c.clone(), q(1));
        let cfg = GraphActionConfig::default();
        for rel in sp_relations(n, g) {
            let r = apply_expr_with(&rel.residual(), &v, &cfg).unwrap();
            prop_assert!(r.is_zero(), "{} on {}", rel.name, c.describe());
        }
    }
}
