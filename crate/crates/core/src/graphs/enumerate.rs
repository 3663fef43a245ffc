//! Enumeration of nonzero canonical graphs by internal degree and leg count.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use super::graph::{canonicalize, is_connected, shape_code, CanonGraph, Leg, MarkedGraph, Mark};
use crate::error::Result;

/// Perfect matchings of `items` avoiding two half-edges of the same vertex.
fn matchings(items: &[usize], acc: &mut Vec<[usize; 2]>, out: &mut Vec<Vec<[usize; 2]>>) {
    let Some((&first, rest)) = items.split_first() else {
        out.push(acc.clone());
        return;
    };
    for (k, &other) in rest.iter().enumerate() {
        if other / 3 == first / 3 {
            continue;
        }
        let remaining: Vec<usize> = rest
            .iter()
            .enumerate()
            .filter(|&(x, _)| x != k)
            .map(|(_, &h)| h)
            .collect();
        acc.push([first, other]);
        matchings(&remaining, acc, out);
        acc.pop();
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

static SHAPES: Mutex<BTreeMap<usize, Vec<MarkedGraph>>> = Mutex::new(BTreeMap::new());
static CORES: Mutex<BTreeMap<(usize, usize), Vec<Vec<u16>>>> = Mutex::new(BTreeMap::new());

/// Connected trivalent cores with `m` vertices and unlabeled legs, one per isomorphism class.
/// Cores with a loop at a vertex are omitted since they always vanish.
pub(crate) fn connected_shapes(m: usize) -> Result<Vec<MarkedGraph>> {
    if let Some(s) = SHAPES.lock().expect("shape cache").get(&m) {
        return Ok(s.clone());
    }
    let mut found: BTreeMap<CanonGraph, MarkedGraph> = BTreeMap::new();
    let h = 3 * m;
    for k in 0..=(m + 2).min(h) {
        if (h - k) % 2 != 0 {
            continue;
        }
        for legs in subsets(h, k) {
            let rest: Vec<usize> = (0..h).filter(|x| !legs.contains(x)).collect();
            let mut ms = Vec::new();
            matchings(&rest, &mut Vec::new(), &mut ms);
            for pairs in ms {
                let mut g = MarkedGraph {
                    trivalent: (0..m).map(|t| [3 * t, 3 * t + 1, 3 * t + 2]).collect(),
                    legs: Vec::with_capacity(k),
                    pairs,
                    circles: 0,
                };
                for (x, &slot) in legs.iter().enumerate() {
                    g.legs.push(Leg {
                        half_edge: h + x,
                        mark: 1,
                    });
                    g.pairs.push([slot, h + x]);
                }
                if !is_connected(&g)? {
                    continue;
                }
                found.entry(shape_code(&g)?).or_insert(g);
            }
        }
    }
    let shapes: Vec<MarkedGraph> = found.into_values().collect();
    SHAPES.lock().expect("shape cache").insert(m, shapes.clone());
    Ok(shapes)
}

/// Canonical codes of nonzero connected cores with `m` vertices and legs marked in 1..=g.
pub(crate) fn labeled_cores(m: usize, g: usize) -> Result<Vec<Vec<u16>>> {
    if let Some(c) = CORES.lock().expect("core cache").get(&(m, g)) {
        return Ok(c.clone());
    }
    let mut found: BTreeSet<Vec<u16>> = BTreeSet::new();
    for shape in connected_shapes(m)? {
        let k = shape.legs.len();
        let mut marks = vec![1 as Mark; k];
        loop {
            let mut gr = shape.clone();
            for (l, &mk) in gr.legs.iter_mut().zip(&marks) {
                l.mark = mk;
            }
            if let Some((c, _)) = canonicalize(&gr)? {
                found.insert(c.cores.into_iter().next().expect("one core"));
            }
            // Odometer over {1..g}^k.
            let mut pos = 0;
            while pos < k && marks[pos] as usize == g {
                marks[pos] = 1;
                pos += 1;
            }
            if pos == k {
                break;
            }
            marks[pos] += 1;
        }
    }
    let cores: Vec<Vec<u16>> = found.into_iter().collect();
    CORES.lock().expect("core cache").insert((m, g), cores.clone());
    Ok(cores)
}

fn core_legs(code: &[u16]) -> usize {
    CanonGraph {
        cores: vec![code.to_vec()],
        ..Default::default()
    }
    .leg_count()
}

/// Every nonzero canonical graph with internal degree `m`, marks in 1..=g and at most `max_legs` legs,
/// grouped by leg profile.
pub fn enumerate_graphs(m: usize, g: usize, max_legs: usize) -> Result<BTreeMap<Vec<usize>, Vec<CanonGraph>>> {
    let mut pool: Vec<(usize, Vec<u16>, usize)> = Vec::new();
    for s in 1..=m {
        for c in labeled_cores(s, g)? {
            let l = core_legs(&c);
            pool.push((s, c, l));
        }
    }
    let mut combos: Vec<(Vec<Vec<u16>>, usize)> = Vec::new();
    fn pick(
        pool: &[(usize, Vec<u16>, usize)],
        start: usize,
        left: usize,
        legs: usize,
        max_legs: usize,
        cur: &mut Vec<Vec<u16>>,
        out: &mut Vec<(Vec<Vec<u16>>, usize)>,
    ) {
        if left == 0 {
            out.push((cur.clone(), legs));
            return;
        }
        for x in start..pool.len() {
            let (s, c, l) = &pool[x];
            if *s <= left && legs + l <= max_legs {
                cur.push(c.clone());
                pick(pool, x, left - s, legs + l, max_legs, cur, out);
                cur.pop();
            }
        }
    }
    pick(&pool, 0, m, 0, max_legs, &mut Vec::new(), &mut combos);

    let types: Vec<(Mark, Mark)> = (1..=g as Mark)
        .flat_map(|i| (i..=g as Mark).map(move |j| (i, j)))
        .collect();
    let mut out: BTreeMap<Vec<usize>, Vec<CanonGraph>> = BTreeMap::new();
    for (cores, legs) in combos {
        let mut cores = cores;
        cores.sort();
        let budget = (max_legs - legs) / 2;
        let mut stack: Vec<(Vec<(Mark, Mark)>, usize)> = vec![(Vec::new(), 0)];
        while let Some((chords, start)) = stack.pop() {
            let c = CanonGraph {
                cores: cores.clone(),
                chords: chords.clone(),
                circles: 0,
            };
            out.entry(c.profile(g)).or_default().push(c);
            if chords.len() < budget {
                for (x, &t) in types.iter().enumerate().skip(start) {
                    let mut next = chords.clone();
                    next.push(t);
                    stack.push((next, x));
                }
            }
        }
    }
    for v in out.values_mut() {
        v.sort_by(|a, b| complexity(b).cmp(&complexity(a)).then_with(|| a.cmp(b)));
    }
    Ok(out)
}

/// Legs carried by trivalent vertices; simpler graphs sort last and become quotient representatives.
fn complexity(c: &CanonGraph) -> usize {
    c.cores.iter().map(|x| core_legs(x)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_counts() {
        // One vertex: tripod. Two vertices: theta, the double edge with two legs, the H graph.
        assert_eq!(connected_shapes(1).unwrap().len(), 1);
        assert_eq!(connected_shapes(2).unwrap().len(), 3);
    }

    #[test]
    fn tripods_need_distinct_marks() {
        assert_eq!(labeled_cores(1, 2).unwrap().len(), 0);
        assert_eq!(labeled_cores(1, 3).unwrap().len(), 1);
    }

    #[test]
    fn chord_diagrams_counted() {
        let gs = enumerate_graphs(0, 2, 4).unwrap();
        let total: usize = gs.values().map(|v| v.len()).sum();
        // Multisets of at most two chords among 3 types: 1 + 3 + 6.
        assert_eq!(total, 10);
    }
}
