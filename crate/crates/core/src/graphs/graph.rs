//! Marked uni-trivalent graphs and their canonical forms.
//!
//! Orientation is a cyclic order at each trivalent vertex; reversing one
//! vertex negates the graph. A canonical core is described by a breadth-first
//! labeling: vertices in discovery order, each with an explicit ordering of
//! its three half-edges, and one token per slot naming what the slot is
//! joined to. The least token string over all roots, root orderings and
//! orientation choices is the canonical code; the parity of reflected vertex
//! orderings in that labeling is the sign.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Mark = u8;

/// Tokens below this value are leg markings; above it they name a vertex slot.
const VERTEX_TOKEN: u16 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Leg {
    pub half_edge: usize,
    pub mark: Mark,
}

/// A graph in exchange form: arbitrary half-edge ids, explicit pairing.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MarkedGraph {
    /// Half-edges at each trivalent vertex, in cyclic order.
    pub trivalent: Vec<[usize; 3]>,
    pub legs: Vec<Leg>,
    pub pairs: Vec<[usize; 2]>,
    pub circles: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Owner {
    Tri(usize, usize),
    Leg(usize),
}

/// Dense view: half-edges renumbered 0..h with owner and partner arrays.
struct Dense {
    tri: Vec<[usize; 3]>,
    marks: Vec<Mark>,
    owner: Vec<Owner>,
    partner: Vec<usize>,
}

impl MarkedGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn internal_degree(&self) -> usize {
        self.trivalent.len()
    }

    /// Half the number of vertices, trivalent plus univalent.
    pub fn total_degree(&self) -> Option<usize> {
        let v = self.trivalent.len() + self.legs.len();
        (v % 2 == 0).then_some(v / 2)
    }

    fn dense(&self) -> Result<Dense> {
        let mut ids: BTreeMap<usize, Owner> = BTreeMap::new();
        let mut claim = |id: usize, o: Owner| -> Result<()> {
            if ids.insert(id, o).is_some() {
                return Err(Error::MalformedGraph(format!("half-edge {id} used twice")));
            }
            Ok(())
        };
        for (v, hs) in self.trivalent.iter().enumerate() {
            for (s, &h) in hs.iter().enumerate() {
                claim(h, Owner::Tri(v, s))?;
            }
        }
        for (l, leg) in self.legs.iter().enumerate() {
            claim(leg.half_edge, Owner::Leg(l))?;
            if leg.mark == 0 {
                return Err(Error::MalformedGraph("leg markings start at 1".into()));
            }
        }
        let index: BTreeMap<usize, usize> = ids.keys().enumerate().map(|(i, &id)| (id, i)).collect();
        let owner: Vec<Owner> = ids.values().copied().collect();
        let mut partner = vec![usize::MAX; owner.len()];
        for &[a, b] in &self.pairs {
            let (Some(&x), Some(&y)) = (index.get(&a), index.get(&b)) else {
                return Err(Error::MalformedGraph(format!("pair ({a}, {b}) names an unknown half-edge")));
            };
            if x == y || partner[x] != usize::MAX || partner[y] != usize::MAX {
                return Err(Error::MalformedGraph(format!("half-edge in pair ({a}, {b}) is paired twice")));
            }
            partner[x] = y;
            partner[y] = x;
        }
        if let Some(i) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(Error::MalformedGraph(format!(
                "half-edge {} is unpaired",
                ids.keys().nth(i).copied().unwrap_or_default()
            )));
        }
        Ok(Dense {
            tri: self
                .trivalent
                .iter()
                .map(|hs| [index[&hs[0]], index[&hs[1]], index[&hs[2]]])
                .collect(),
            marks: self.legs.iter().map(|l| l.mark).collect(),
            owner,
            partner,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.dense().map(|_| ())
    }

    /// Same graph with the cyclic order at trivalent vertex `v` reversed.
    pub fn flipped(&self, v: usize) -> MarkedGraph {
        let mut g = self.clone();
        g.trivalent[v].swap(1, 2);
        g
    }

    pub fn next_half_edge(&self) -> usize {
        self.trivalent
            .iter()
            .flat_map(|h| h.iter().copied())
            .chain(self.legs.iter().map(|l| l.half_edge))
            .max()
            .map_or(0, |m| m + 1)
    }

    /// Disjoint union, renumbering the half-edges of `other`.
    pub fn disjoint_union(&self, other: &MarkedGraph) -> MarkedGraph {
        let off = self.next_half_edge();
        let mut g = self.clone();
        g.trivalent
            .extend(other.trivalent.iter().map(|h| [h[0] + off, h[1] + off, h[2] + off]));
        g.legs.extend(other.legs.iter().map(|l| Leg {
            half_edge: l.half_edge + off,
            mark: l.mark,
        }));
        g.pairs.extend(other.pairs.iter().map(|p| [p[0] + off, p[1] + off]));
        g.circles += other.circles;
        g
    }

    /// A single dashed chord with marked ends.
    pub fn chord(i: Mark, j: Mark) -> MarkedGraph {
        MarkedGraph {
            trivalent: vec![],
            legs: vec![Leg { half_edge: 0, mark: i }, Leg { half_edge: 1, mark: j }],
            pairs: vec![[0, 1]],
            circles: 0,
        }
    }

    /// One trivalent vertex joined to legs marked i, j, k.
    pub fn tripod(i: Mark, j: Mark, k: Mark) -> MarkedGraph {
        MarkedGraph {
            trivalent: vec![[0, 1, 2]],
            legs: vec![
                Leg { half_edge: 3, mark: i },
                Leg { half_edge: 4, mark: j },
                Leg { half_edge: 5, mark: k },
            ],
            pairs: vec![[0, 3], [1, 4], [2, 5]],
            circles: 0,
        }
    }

    /// Two trivalent vertices joined by three edges.
    pub fn theta() -> MarkedGraph {
        MarkedGraph {
            trivalent: vec![[0, 1, 2], [3, 4, 5]],
            legs: vec![],
            pairs: vec![[0, 3], [1, 4], [2, 5]],
            circles: 0,
        }
    }

    pub fn circle() -> MarkedGraph {
        MarkedGraph {
            circles: 1,
            ..Default::default()
        }
    }

    /// Partner of a half-edge.
    pub fn partner_of(&self, h: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&[a, b]| {
            if a == h {
                Some(b)
            } else if b == h {
                Some(a)
            } else {
                None
            }
        })
    }
}

/// Canonical form: canonical core codes, sorted chords, circle count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CanonGraph {
    pub cores: Vec<Vec<u16>>,
    pub chords: Vec<(Mark, Mark)>,
    pub circles: usize,
}

impl CanonGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn internal_degree(&self) -> usize {
        self.cores.iter().map(|c| c.len() / 3).sum()
    }

    fn core_marks(&self) -> impl Iterator<Item = Mark> + '_ {
        self.cores
            .iter()
            .flat_map(|c| c.iter().filter(|&&t| t < VERTEX_TOKEN).map(|&t| t as Mark))
    }

    pub fn leg_count(&self) -> usize {
        self.core_marks().count() + 2 * self.chords.len()
    }

    /// Number of legs with each marking 1..=g.
    pub fn profile(&self, g: usize) -> Vec<usize> {
        let mut p = vec![0; g];
        for m in self
            .core_marks()
            .chain(self.chords.iter().flat_map(|&(a, b)| [a, b]))
        {
            p[m as usize - 1] += 1;
        }
        p
    }

    pub fn max_mark(&self) -> Mark {
        self.core_marks()
            .chain(self.chords.iter().flat_map(|&(a, b)| [a, b]))
            .max()
            .unwrap_or(0)
    }

    pub fn with_chord(&self, i: Mark, j: Mark) -> CanonGraph {
        let mut c = self.clone();
        let ch = (i.min(j), i.max(j));
        let pos = c.chords.partition_point(|x| *x <= ch);
        c.chords.insert(pos, ch);
        c
    }

    pub fn without_circles(&self) -> CanonGraph {
        CanonGraph {
            circles: 0,
            ..self.clone()
        }
    }

    /// Rebuilds a graph whose canonical form is `self` with sign +1.
    pub fn to_marked(&self) -> MarkedGraph {
        let mut g = MarkedGraph {
            circles: self.circles,
            ..Default::default()
        };
        let mut next = 0usize;
        for code in &self.cores {
            let base = next;
            let v = code.len() / 3;
            next += 3 * v;
            for t in 0..v {
                g.trivalent.push([base + 3 * t, base + 3 * t + 1, base + 3 * t + 2]);
            }
            for (pos, &tok) in code.iter().enumerate() {
                if tok < VERTEX_TOKEN {
                    g.legs.push(Leg {
                        half_edge: next,
                        mark: tok as Mark,
                    });
                    g.pairs.push([base + pos, next]);
                    next += 1;
                } else {
                    let other = (tok - VERTEX_TOKEN) as usize;
                    if pos < other {
                        g.pairs.push([base + pos, base + other]);
                    }
                }
            }
        }
        for &(a, b) in &self.chords {
            g.legs.push(Leg { half_edge: next, mark: a });
            g.legs.push(Leg {
                half_edge: next + 1,
                mark: b,
            });
            g.pairs.push([next, next + 1]);
            next += 2;
        }
        g
    }

    /// Compact text form, e.g. `Y(1,2,3) + [1-1] + O`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for code in &self.cores {
            let toks: Vec<String> = code
                .iter()
                .map(|&t| {
                    if t < VERTEX_TOKEN {
                        format!("{t}")
                    } else {
                        let s = (t - VERTEX_TOKEN) as usize;
                        format!("v{}.{}", s / 3, s % 3)
                    }
                })
                .collect();
            parts.push(format!("<{}>", toks.join(",")));
        }
        for (a, b) in &self.chords {
            parts.push(format!("[{a}-{b}]"));
        }
        for _ in 0..self.circles {
            parts.push("O".into());
        }
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join(" ")
        }
    }
}

/// Result of canonicalizing one connected core.
pub(crate) struct CoreCode {
    pub code: Vec<u16>,
    /// Reflection parity of the minimal labeling.
    pub odd: bool,
    /// Some minimal labeling has the opposite parity: the graph is its own negative.
    pub self_negative: bool,
}

fn core_code(d: &Dense, verts: &[usize]) -> CoreCode {
    let nv = verts.len();
    let mut best: Option<(Vec<u16>, bool)> = None;
    let mut self_negative = false;
    let mut idx = vec![usize::MAX; d.tri.len()];
    let mut order: Vec<[usize; 3]> = Vec::with_capacity(nv);
    let mut discovered: Vec<usize> = Vec::with_capacity(nv);
    let mut code: Vec<u16> = Vec::with_capacity(3 * nv);
    for &root in verts {
        for rot in 0..3 {
            for refl in [false, true] {
                for mask in 0u32..(1 << (nv - 1)) {
                    for &v in &discovered {
                        idx[v] = usize::MAX;
                    }
                    discovered.clear();
                    order.clear();
                    code.clear();
                    let c = d.tri[root];
                    let first = if refl {
                        [c[rot], c[(rot + 2) % 3], c[(rot + 1) % 3]]
                    } else {
                        [c[rot], c[(rot + 1) % 3], c[(rot + 2) % 3]]
                    };
                    let mut odd = refl;
                    idx[root] = 0;
                    discovered.push(root);
                    order.push(first);
                    let mut choice = 0;
                    let mut aborted = false;
                    // Still equal to the best code so far; once smaller, keep going.
                    let mut tied = best.is_some();
                    let mut t = 0;
                    while t < order.len() {
                        for s in 0..3 {
                            let p = d.partner[order[t][s]];
                            let tok = match d.owner[p] {
                                Owner::Leg(l) => d.marks[l] as u16,
                                Owner::Tri(w, slot) => {
                                    if idx[w] == usize::MAX {
                                        let cw = d.tri[w];
                                        let flip = mask >> choice & 1 == 1;
                                        choice += 1;
                                        odd ^= flip;
                                        let o = if flip {
                                            [cw[slot], cw[(slot + 2) % 3], cw[(slot + 1) % 3]]
                                        } else {
                                            [cw[slot], cw[(slot + 1) % 3], cw[(slot + 2) % 3]]
                                        };
                                        idx[w] = order.len();
                                        discovered.push(w);
                                        order.push(o);
                                    }
                                    let iw = idx[w];
                                    let pos = order[iw].iter().position(|&h| h == p).expect("slot");
                                    VERTEX_TOKEN + (3 * iw + pos) as u16
                                }
                            };
                            code.push(tok);
                            if tied {
                                if let Some((b, _)) = &best {
                                    let k = code.len() - 1;
                                    if tok > b[k] {
                                        aborted = true;
                                        break;
                                    }
                                    tied = tok == b[k];
                                }
                            }
                        }
                        if aborted {
                            break;
                        }
                        t += 1;
                    }
                    if aborted || (choice < nv - 1 && mask >> choice != 0) {
                        // Unused choice bits only repeat an earlier labeling.
                        continue;
                    }
                    match &best {
                        None => best = Some((code.clone(), odd)),
                        Some((b, bo)) => {
                            if code < *b {
                                best = Some((code.clone(), odd));
                                self_negative = false;
                            } else if code == *b && odd != *bo {
                                self_negative = true;
                            }
                        }
                    }
                }
            }
        }
    }
    for &v in &discovered {
        idx[v] = usize::MAX;
    }
    let (code, odd) = best.expect("core has a vertex");
    CoreCode {
        code,
        odd,
        self_negative,
    }
}

/// Canonical form with sign, or `None` when an orientation-reversing automorphism forces zero.
pub fn canonicalize(graph: &MarkedGraph) -> Result<Option<(CanonGraph, i8)>> {
    let (cores, sign) = canonical_parts(graph)?;
    let Some(cores) = cores else { return Ok(None) };
    Ok(Some((cores, sign)))
}

fn canonical_parts(graph: &MarkedGraph) -> Result<(Option<CanonGraph>, i8)> {
    let d = graph.dense()?;
    let h = d.owner.len();
    // Union-find over half-edges: vertex slots and pairs join components.
    let mut parent: Vec<usize> = (0..h).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let unite = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra] = rb;
        }
    };
    for hs in &d.tri {
        unite(&mut parent, hs[0], hs[1]);
        unite(&mut parent, hs[0], hs[2]);
    }
    for x in 0..h {
        unite(&mut parent, x, d.partner[x]);
    }
    let mut comp_tri: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, hs) in d.tri.iter().enumerate() {
        let r = find(&mut parent, hs[0]);
        comp_tri.entry(r).or_default().push(v);
    }
    let mut chords = Vec::new();
    for x in 0..h {
        if let Owner::Leg(l) = d.owner[x] {
            let p = d.partner[x];
            if let Owner::Leg(l2) = d.owner[p] {
                if x < p {
                    let (a, b) = (d.marks[l], d.marks[l2]);
                    chords.push((a.min(b), a.max(b)));
                }
            }
        }
    }
    chords.sort_unstable();
    let mut cores = Vec::with_capacity(comp_tri.len());
    let mut odd = false;
    for verts in comp_tri.values() {
        let c = core_code(&d, verts);
        if c.self_negative {
            return Ok((None, 0));
        }
        odd ^= c.odd;
        cores.push(c.code);
    }
    cores.sort();
    Ok((
        Some(CanonGraph {
            cores,
            chords,
            circles: graph.circles,
        }),
        if odd { -1 } else { 1 },
    ))
}

/// Canonical code of the graph ignoring whether it vanishes; used to deduplicate shapes.
pub(crate) fn shape_code(graph: &MarkedGraph) -> Result<CanonGraph> {
    let d = graph.dense()?;
    let verts: Vec<usize> = (0..d.tri.len()).collect();
    let code = if verts.is_empty() {
        Vec::new()
    } else {
        core_code(&d, &verts).code
    };
    Ok(CanonGraph {
        cores: if code.is_empty() { vec![] } else { vec![code] },
        chords: vec![],
        circles: 0,
    })
}

/// Whether the trivalent vertices and their edges form one connected piece.
pub(crate) fn is_connected(graph: &MarkedGraph) -> Result<bool> {
    let d = graph.dense()?;
    if d.tri.is_empty() {
        return Ok(true);
    }
    let mut seen = vec![false; d.tri.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &hh in &d.tri[v] {
            if let Owner::Tri(w, _) = d.owner[d.partner[hh]] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    Ok(seen.into_iter().all(|s| s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph() {
        let (c, s) = canonicalize(&MarkedGraph::empty()).unwrap().unwrap();
        assert_eq!(c, CanonGraph::empty());
        assert_eq!(s, 1);
    }

    #[test]
    fn theta_flip_is_negative() {
        let t = MarkedGraph::theta();
        let (c1, s1) = canonicalize(&t).unwrap().unwrap();
        let (c2, s2) = canonicalize(&t.flipped(0)).unwrap().unwrap();
        assert_eq!(c1, c2);
        assert_eq!(s1, -s2);
    }

    #[test]
    fn chord_is_unoriented() {
        let a = canonicalize(&MarkedGraph::chord(2, 1)).unwrap().unwrap();
        let b = canonicalize(&MarkedGraph::chord(1, 2)).unwrap().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.1, 1);
    }

    #[test]
    fn repeated_marks_at_a_vertex_vanish() {
        assert!(canonicalize(&MarkedGraph::tripod(1, 1, 2)).unwrap().is_none());
        assert!(canonicalize(&MarkedGraph::tripod(1, 2, 3)).unwrap().is_some());
    }

    #[test]
    fn tripod_rotation_and_reflection() {
        let (a, sa) = canonicalize(&MarkedGraph::tripod(1, 2, 3)).unwrap().unwrap();
        let (b, sb) = canonicalize(&MarkedGraph::tripod(2, 3, 1)).unwrap().unwrap();
        let (c, sc) = canonicalize(&MarkedGraph::tripod(2, 1, 3)).unwrap().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(sa, sb);
        assert_eq!(sa, -sc);
    }

    #[test]
    fn decode_round_trip() {
        let g = MarkedGraph::theta().disjoint_union(&MarkedGraph::tripod(3, 1, 2));
        let g = g.disjoint_union(&MarkedGraph::chord(2, 2));
        let (c, _) = canonicalize(&g).unwrap().unwrap();
        let (c2, s2) = canonicalize(&c.to_marked()).unwrap().unwrap();
        assert_eq!(c, c2);
        assert_eq!(s2, 1);
        assert_eq!(c.internal_degree(), 3);
        assert_eq!(c.profile(3), vec![1, 3, 1]);
    }

    #[test]
    fn malformed_rejected() {
        let mut g = MarkedGraph::chord(1, 1);
        g.pairs.clear();
        assert!(matches!(canonicalize(&g), Err(Error::MalformedGraph(_))));
    }
}
