//! The nine acceptance criteria, shared by `skewsp selftest` and the
//! `acceptance` test target. Every comparison is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exalg::{Context, SymplecticForm};
use crate::genus::{check_cstring, evaluate_surface_rr, genus_from_chern_numbers, genus_from_table, ChernNumbers};
use crate::graphs::{check_graph_relations, highest_weight_check, parity_admissible, quotient_rank, GraphActionConfig};
use crate::k3::{build_k3_table, check_232, supertrace};
use crate::pn::{quotient_graded_dims, realize_and_check_annihilation};
use crate::rational::{q, qr};
use crate::reps::{
    all_tuples, closed_form_last_slot, closed_form_rank_two, enumerate_decomposition, multiplicity, sp_irrep_dim,
    HodgeTable, Partition, Weight,
};
use crate::spops::{
    check_commuting_actions, check_sp_relations_with, invariant_subspace, invariant_total_degree_dims, SpAction,
};

/// Contexts (n, g) for the full-basis operator checks.
pub const OPERATOR_CONTEXTS: [(usize, usize); 6] = [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)];
/// Contexts (n, g) for the invariant-theory checks.
pub const INVARIANT_CONTEXTS: [(usize, usize); 3] = [(1, 1), (1, 2), (2, 1)];
pub const RANDOM_TABLES: usize = 200;
pub const RANDOM_SEED: u64 = 0x5eed_2024;

/// Deliberate defects used to confirm that the suite can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mutations {
    /// Flip the sign of ε_{1,n+1} without touching its inverse.
    pub flip_form_sign: bool,
    /// Use -1/4 instead of -1/2 for Λ^ii on graphs.
    pub lambda_same_quarter: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "operator algebra relations"),
    (2, "commuting sp(V) and sp(g) actions"),
    (3, "decomposition dimensions and invariant kernels"),
    (4, "first fundamental theorem quotient and annihilation"),
    (5, "Chern-string coefficients"),
    (6, "K3 suite"),
    (7, "multiplicity closed forms"),
    (8, "graph suite"),
    (9, "mutation sanity"),
];

fn action_for(n: usize, g: usize, m: &Mutations) -> Result<SpAction> {
    let form = SymplecticForm::standard(n);
    let form = if m.flip_form_sign {
        form.with_flipped_entry(1, n + 1)
    } else {
        form
    };
    SpAction::new(Context::new(n, g)?, form)
}

fn graph_config(m: &Mutations) -> GraphActionConfig {
    if m.lambda_same_quarter {
        GraphActionConfig {
            lambda_same: qr(-1, 4),
            ..Default::default()
        }
    } else {
        GraphActionConfig::default()
    }
}

fn operator_algebra(m: &Mutations) -> Result<Outcome> {
    let mut count = 0;
    let mut failed = Vec::new();
    for (n, g) in OPERATOR_CONTEXTS {
        for r in check_sp_relations_with(&action_for(n, g, m)?)? {
            count += 1;
            if !r.residual_norm_zero {
                failed.push(format!("(n={n},g={g}) {}", r.relation));
            }
        }
    }
    Ok(outcome(
        failed.is_empty(),
        if failed.is_empty() {
            format!("{count} relations vanish on the full basis of 6 contexts")
        } else {
            format!("{} of {count} relations fail, first: {}", failed.len(), failed[0])
        },
    ))
}

fn commuting_actions(m: &Mutations) -> Result<Outcome> {
    let mut count = 0;
    let mut failed = 0;
    for (n, g) in OPERATOR_CONTEXTS {
        for r in check_commuting_actions(&action_for(n, g, m)?)? {
            count += 1;
            failed += usize::from(!r.residual_norm_zero);
        }
    }
    Ok(outcome(failed == 0, format!("{} of {count} commutators vanish", count - failed)))
}

fn decomposition() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 1..=3 {
        for g in 1..=3 {
            let total: BigInt = enumerate_decomposition(n, g)?
                .iter()
                .map(|e| BigInt::from(e.dim_spv) * BigInt::from(e.dim_spg))
                .sum();
            if total != BigInt::from(1u8) << (2 * n * g) {
                bad.push(format!("sum {total} at (n={n},g={g})"));
            }
        }
    }
    let mut kernels = Vec::new();
    for (n, g) in INVARIANT_CONTEXTS {
        let dim: usize = invariant_subspace(n, g)?.iter().map(|b| b.dim()).sum();
        let expect = sp_irrep_dim(g, &Weight::constant(g, n as i64))?;
        if BigInt::from(dim) != expect {
            bad.push(format!("kernel {dim} vs {expect} at (n={n},g={g})"));
        }
        kernels.push(dim);
    }
    if kernels[0] != 2 || kernels[1] != 5 {
        bad.push(format!("kernel values {kernels:?}"));
    }
    Ok(outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("dimension sums equal 2^(2ng) for n,g <= 3; kernel dims {kernels:?}")
        } else {
            bad.join("; ")
        },
    ))
}

fn fundamental() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut shown = Vec::new();
    for (n, g) in INVARIANT_CONTEXTS {
        let top = n * g + 1;
        let quotient = quotient_graded_dims(n, g, top)?;
        let inv = invariant_total_degree_dims(&invariant_subspace(n, g)?);
        for (deg, d) in &inv {
            if deg % 2 == 1 && *d != 0 {
                bad.push(format!("odd-degree invariants at (n={n},g={g})"));
            }
        }
        let dims: Vec<usize> = quotient.iter().map(|e| e.quotient).collect();
        for e in &quotient {
            let want = inv.get(&(2 * e.degree)).copied().unwrap_or(0);
            if e.quotient != want {
                bad.push(format!(
                    "degree {} at (n={n},g={g}): quotient {} vs invariants {want}",
                    e.degree, e.quotient
                ));
            }
        }
        if inv.keys().any(|&d| d > 2 * top && inv[&d] != 0) {
            bad.push(format!("invariants beyond degree {} at (n={n},g={g})", 2 * top));
        }
        let ann = realize_and_check_annihilation(n, g)?;
        if !ann.annihilates || ann.lower_witness.is_none() {
            bad.push(format!("annihilation at (n={n},g={g}): {ann:?}"));
        }
        shown.push(format!("(n={n},g={g}) {dims:?}"));
    }
    Ok(outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("graded quotients {}; P_(n+1) annihilates, P_n does not", shown.join(" "))
        } else {
            bad.join("; ")
        },
    ))
}

fn cstring() -> Result<Outcome> {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=3 {
        for g in 1..=2 {
            for c in check_cstring(n, g)? {
                checked += 1;
                if !c.matches {
                    bad.push(format!("(n={n},g={g}) q={:?}: {}", c.q, c.coefficient));
                }
            }
        }
    }
    Ok(outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{checked} coefficients equal c_q1...c_qg")
        } else {
            bad.join("; ")
        },
    ))
}

fn k3_numbers() -> ChernNumbers {
    let mut c = ChernNumbers::new();
    c.insert(vec![2], q(24));
    c.insert(vec![1, 1], q(0));
    c
}

fn k3_suite() -> Result<Outcome> {
    let mut bad = Vec::new();
    for m in 0..=8usize {
        let want = (BigInt::from(1u8) << (m + 1)) * BigInt::from(1 - 6 * m as i64);
        let got = evaluate_surface_rr(m)?;
        if got != want {
            bad.push(format!("surface value m={m}: {got} vs {want}"));
        }
    }
    let t1 = build_k3_table(1)?;
    let diamond: Vec<Vec<i64>> = (0..3).map(|p| (0..3).map(|qd| t1.get(&[p], qd)).collect()).collect();
    if diamond != vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]] {
        bad.push(format!("diamond {diamond:?}"));
    }
    let c = check_232()?;
    if !c.passed {
        bad.push(format!("232 check {c:?}"));
    }
    for g in 1..=3 {
        let t = build_k3_table(g)?;
        let st = supertrace(&t).shift(&vec![1; g]);
        let from_table = genus_from_table(&t);
        let from_chern = genus_from_chern_numbers(2, g, &k3_numbers())?;
        if st != from_table || st != from_chern {
            bad.push(format!("supertrace and genus differ at g={g}"));
        }
    }
    let euler = genus_from_table(&t1).eval(&[q(1)])?;
    if euler != q(24) {
        bad.push(format!("genus at y=1 is {euler}"));
    }
    Ok(outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "surface values, diamond, 232, supertrace = genus for g <= 3, Euler number 24".to_string()
        } else {
            bad.join("; ")
        },
    ))
}

/// A random table invariant under p_i ↦ 2n - p_i and under permuting the p_i.
pub fn random_symmetric_table(rng: &mut impl Rng, n: usize, g: usize, max_q: usize) -> HodgeTable {
    let mut values: BTreeMap<(Vec<usize>, usize), i64> = BTreeMap::new();
    let mut t = HodgeTable::new(n, g);
    for p in all_tuples(g, 2 * n) {
        let mut key: Vec<usize> = p.iter().map(|&x| x.min(2 * n - x)).collect();
        key.sort_unstable();
        for qd in 0..=max_q {
            let v = *values
                .entry((key.clone(), qd))
                .or_insert_with(|| rng.gen_range(0..100));
            t.set(p.clone(), qd, v);
        }
    }
    t
}

fn multiplicities() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut compared = 0;
    let mut bad = Vec::new();
    for k in 0..RANDOM_TABLES {
        let g = 1 + k % 2;
        let n = rng.gen_range(1..=3);
        let t = random_symmetric_table(&mut rng, n, g, 2);
        let ni = n as i64;
        for qd in 0..=2i64 {
            for p in 0..=ni {
                let mut a = vec![ni; g];
                a[g - 1] = ni - p;
                let got = multiplicity(&t, qd, &Weight(a), n, g)?;
                compared += 1;
                if got != closed_form_last_slot(&t, qd, p) {
                    bad.push(format!("table {k}: last-slot form at q={qd}, p={p}"));
                }
            }
            if g == 2 {
                for p1 in 0..=ni {
                    for p2 in p1..=ni {
                        let got = multiplicity(&t, qd, &Weight(vec![ni - p1, ni - p2]), n, g)?;
                        compared += 1;
                        if got != closed_form_rank_two(&t, qd, p1, p2) {
                            bad.push(format!("table {k}: rank-two form at q={qd}, p=({p1},{p2})"));
                        }
                    }
                }
            }
        }
    }
    let mut negative = Vec::new();
    for g in 1..=3 {
        let t = build_k3_table(g)?;
        for part in Partition::in_box(g, 1) {
            let mut a: Vec<i64> = part.0.iter().map(|&x| x as i64).collect();
            a.resize(g, 0);
            for qd in 0..=2 {
                let v = multiplicity(&t, qd, &Weight(a.clone()), 1, g)?;
                if v < 0 {
                    negative.push(format!("g={g} a={a:?} q={qd}: {v}"));
                }
            }
        }
    }
    bad.extend(negative);
    Ok(outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{compared} closed-form values match on {RANDOM_TABLES} tables; K3 multiplicities nonnegative")
        } else {
            format!("{} mismatches, first: {}", bad.len(), bad[0])
        },
    ))
}

fn graph_suite(m: &Mutations) -> Result<Outcome> {
    let cfg = graph_config(m);
    let mut bad = Vec::new();
    let r1 = quotient_rank(1, 1, 0)?;
    let r2 = quotient_rank(2, 1, 0)?;
    if (r1, r2) != (2, 5) {
        bad.push(format!("degree-zero ranks {r1}, {r2}"));
    }
    let mut ranks = Vec::new();
    for g in 1..=3 {
        let (a, b) = (quotient_rank(g, 1, 2)?, quotient_rank(g, 1, 0)?);
        if a != b {
            bad.push(format!("g={g}: degree 2 rank {a} vs degree 0 rank {b}"));
        }
        ranks.push(b);
    }
    let mut relations = 0;
    for g in 1..=3 {
        for r in check_graph_relations(g, 1, &cfg)? {
            relations += 1;
            if !r.residual_norm_zero {
                bad.push(format!("g={g}: {} fails on the quotient", r.relation));
            }
        }
    }
    for qd in 0..=3 {
        for legs in 0..=6 {
            let want = (3 * qd + legs) % 2 == 0 && !(qd == 1 && legs == 1);
            if parity_admissible(qd, legs) != want {
                bad.push(format!("parity rule at q={qd}, |p|={legs}"));
            }
        }
    }
    for g in 1..=3 {
        let mut cases = vec![highest_weight_check(g, 1, 0, &cfg)?];
        if g >= 3 {
            cases.push(highest_weight_check(g, 1, 1, &cfg)?);
        }
        for c in cases {
            if !c.passed {
                bad.push(format!("g={g}: highest weight of {} {:?}", c.vector, c.weight));
            }
        }
    }
    Ok(outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("ranks 2, 5; degree 2 = degree 0 ranks {ranks:?}; {relations} relations; parity; highest weights")
        } else {
            format!("{} failures, first: {}", bad.len(), bad[0])
        },
    ))
}

fn mutation_sanity() -> Result<Outcome> {
    let flipped = operator_algebra(&Mutations {
        flip_form_sign: true,
        ..Default::default()
    })?;
    let quarter = graph_suite(&Mutations {
        lambda_same_quarter: true,
        ..Default::default()
    })?;
    Ok(outcome(
        !flipped.passed && !quarter.passed,
        format!(
            "sign flip: {}; Lambda^ii = -1/4: {}",
            if flipped.passed { "undetected" } else { "detected" },
            if quarter.passed { "undetected" } else { "detected" }
        ),
    ))
}

/// Runs one criterion; errors count as failures.
pub fn run_criterion(id: u8, m: &Mutations) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown", |(_, s)| *s)
        .to_string();
    let res = match id {
        1 => operator_algebra(m),
        2 => commuting_actions(m),
        3 => decomposition(),
        4 => fundamental(),
        5 => cstring(),
        6 => k3_suite(),
        7 => multiplicities(),
        8 => graph_suite(m),
        9 => mutation_sanity(),
        _ => Ok(outcome(false, "no such criterion")),
    };
    let (passed, detail) = match res {
        Ok(o) => (o.passed, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
    }
}

pub fn run_all(m: &Mutations) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id, m)).collect()
}
