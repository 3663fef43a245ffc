use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewsp::acceptance::random_symmetric_table;
use skewsp::k3::build_k3_table;
use skewsp::pn::quotient_graded_dims;
use skewsp::reps::{
    closed_form_last_slot, closed_form_rank_two, enumerate_decomposition, gl_schur_dim, invariant_graded_dims,
    multiplicity, sp_irrep_dim, Partition, SignedPermutation, Weight,
};
use skewsp::spops::invariant_subspace;

/// Semistandard tableaux of shape λ with entries in 1..=m, counted by filling cells row by row.
fn ssyt_count(m: usize, shape: &[usize]) -> u64 {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid = vec![vec![0usize; shape.first().copied().unwrap_or(0)]; shape.len()];
    fn fill(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, m: usize) -> u64 {
        let Some(&(r, c)) = cells.get(k) else { return 1 };
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        let mut total = 0;
        for v in lo_row.max(lo_col)..=m {
            grid[r][c] = v;
            total += fill(k + 1, cells, grid, m);
        }
        total
    }
    fill(0, &cells, &mut grid, m)
}

#[test]
fn rank_one_and_two_dimensions() {
    for a in 0..8i64 {
        assert_eq!(sp_irrep_dim(1, &Weight(vec![a])).unwrap(), BigInt::from(a + 1));
        for b in 0..=a {
            let want = (a - b + 1) * (b + 1) * (a + 2) * (a + b + 3) / 6;
            assert_eq!(sp_irrep_dim(2, &Weight(vec![a, b])).unwrap(), BigInt::from(want));
        }
    }
    assert!(sp_irrep_dim(2, &Weight(vec![0, 1])).is_err());
}

#[test]
fn schur_dimensions_match_tableau_count() {
    for m in 1..=4 {
        for lam in Partition::in_box(3, 3) {
            assert_eq!(gl_schur_dim(m, &lam), BigInt::from(ssyt_count(m, &lam.0)), "m={m} {lam:?}");
        }
    }
}

#[test]
fn dual_cauchy_box_sum() {
    for m in 1..=4usize {
        for g in 1..=4usize {
            let total: BigInt = Partition::in_box(m, g)
                .iter()
                .map(|l| gl_schur_dim(m, l) * gl_schur_dim(g, &l.transpose()))
                .sum();
            assert_eq!(total, BigInt::from(1u64) << (m * g));
        }
    }
}

#[test]
fn weyl_group_order_and_sign() {
    for g in 1..=4usize {
        let all = SignedPermutation::all(g);
        assert_eq!(all.len(), (1 << g) * (1..=g).product::<usize>());
        let positive = all.iter().filter(|w| w.sign() == 1).count();
        assert_eq!(positive * 2, all.len());
    }
}

#[test]
fn decomposition_dimension_identity() {
    for n in 1..=3usize {
        for g in 1..=3usize {
            let entries = enumerate_decomposition(n, g).unwrap();
            let total: u128 = entries.iter().map(|e| e.dim_spv as u128 * e.dim_spg as u128).sum();
            assert_eq!(total, 1u128 << (2 * n * g), "n={n} g={g}");
            let top = entries.iter().find(|e| e.mu.iter().all(|&x| x == n as i64)).unwrap();
            assert!(top.mu_tilde.iter().all(|&x| x == 0));
        }
    }
    let e = enumerate_decomposition(1, 1).unwrap();
    let pairs: Vec<(Vec<i64>, Vec<i64>)> = e.iter().map(|x| (x.mu.clone(), x.mu_tilde.clone())).collect();
    assert_eq!(pairs, vec![(vec![1], vec![0]), (vec![0], vec![1])]);
}

#[test]
fn invariant_dimensions_agree_across_modules() {
    for (n, g) in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2)] {
        let graded = invariant_graded_dims(n, g, 2 * n * g);
        for (d, v) in &graded {
            if d % 2 == 1 {
                assert_eq!(*v, BigInt::from(0));
            }
        }
        let total: BigInt = graded.values().sum();
        let kernel: usize = invariant_subspace(n, g).unwrap().iter().map(|b| b.dim()).sum();
        assert_eq!(total, BigInt::from(kernel), "n={n} g={g}");
        let top = Weight::constant(g, n as i64);
        assert_eq!(total, sp_irrep_dim(g, &top).unwrap());
        let quotient: usize = quotient_graded_dims(n, g, n * g)
            .unwrap()
            .iter()
            .map(|e| e.quotient)
            .sum();
        assert_eq!(BigInt::from(quotient), total);
    }
}

#[test]
fn k3_multiplicities() {
    let t1 = build_k3_table(1).unwrap();
    assert_eq!(multiplicity(&t1, 1, &Weight(vec![0]), 1, 1).unwrap(), 20);
    let t3 = build_k3_table(3).unwrap();
    assert_eq!(multiplicity(&t3, 1, &Weight(vec![0, 0, 0]), 1, 3).unwrap(), 232);
    assert_eq!(multiplicity(&t3, 0, &Weight(vec![0, 0, 0]), 1, 3).unwrap(), 0);
    for g in 1..=3 {
        let t = build_k3_table(g).unwrap();
        for a in Partition::in_box(g, 1) {
            let mut w: Vec<i64> = a.0.iter().map(|&x| x as i64).collect();
            w.resize(g, 0);
            for qd in 0..=t.max_q() as i64 {
                assert!(multiplicity(&t, qd, &Weight(w.clone()), 1, g).unwrap() >= 0);
            }
        }
    }
    assert!(multiplicity(&t1, 1, &Weight(vec![0]), 1, 2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_action_is_a_homomorphism(g in 1usize..=4, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(),
                                     x in prop::collection::vec(-9i64..=9, 4)) {
        let all = SignedPermutation::all(g);
        let (u, v) = (i.get(&all), j.get(&all));
        let uv = u.compose(v);
        prop_assert_eq!(uv.sign(), u.sign() * v.sign());
        prop_assert_eq!(uv.act(&x[..g]), u.act(&v.act(&x[..g])));
    }

    #[test]
    fn closed_forms_on_symmetric_tables(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ni = n as i64;
        let t1 = random_symmetric_table(&mut rng, n, 1, 1);
        let t2 = random_symmetric_table(&mut rng, n, 2, 1);
        for qd in 0..=1i64 {
            for p in 0..=ni {
                prop_assert_eq!(
                    multiplicity(&t1, qd, &Weight(vec![ni - p]), n, 1).unwrap(),
                    closed_form_last_slot(&t1, qd, p)
                );
                prop_assert_eq!(
                    multiplicity(&t2, qd, &Weight(vec![ni, ni - p]), n, 2).unwrap(),
                    closed_form_last_slot(&t2, qd, p)
                );
                for p1 in 0..=p {
                    prop_assert_eq!(
                        multiplicity(&t2, qd, &Weight(vec![ni - p1, ni - p]), n, 2).unwrap(),
                        closed_form_rank_two(&t2, qd, p1, p)
                    );
                }
            }
        }
    }
}
