use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use skewsp::genus::{
    check_cstring, chern_numbers_from_genus, elementary_symmetric_extract, evaluate_surface_rr,
    genus_from_chern_numbers, genus_from_table, todd_coeffs, todd_series, ChernMonomialValue, ChernNumbers,
};
use skewsp::k3::{build_k3_table, catalan, su2_invariant_dim, supertrace, trace_on_hq};
use skewsp::poly::Poly;
use skewsp::rational::{q, qr, Q};

fn k3_numbers() -> ChernNumbers {
    BTreeMap::from([(vec![2], q(24)), (vec![1, 1], q(0))])
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn combination(terms: &[(&[usize], Q)]) -> ChernMonomialValue {
    let mut v = ChernMonomialValue::default();
    for (k, c) in terms {
        v.add_term(k.to_vec(), c.clone());
    }
    v
}

fn ballot_sequences(k: usize) -> u64 {
    (0u32..1 << (2 * k))
        .filter(|w| {
            let mut h = 0i32;
            for b in 0..2 * k {
                h += if w >> b & 1 == 1 { 1 } else { -1 };
                if h < 0 {
                    return false;
                }
            }
            h == 0
        })
        .count() as u64
}

#[test]
fn todd_coefficients_match_bernoulli_numbers() {
    let want = [q(1), qr(1, 2), qr(1, 12), q(0), qr(-1, 720), q(0), qr(1, 30240)];
    assert_eq!(todd_coeffs(6), want.to_vec());
}

#[test]
fn todd_classes_in_low_dimension() {
    let part = |n: usize| {
        let s = todd_series(n).unwrap().degree_part(n);
        elementary_symmetric_extract(&s.t_coefficient(&[])).unwrap()
    };
    assert_eq!(part(1), combination(&[(&[1], qr(1, 2))]));
    assert_eq!(part(2), combination(&[(&[1, 1], qr(1, 12)), (&[2], qr(1, 12))]));
    assert_eq!(part(3), combination(&[(&[2, 1], qr(1, 24))]));
    assert_eq!(
        part(4),
        combination(&[
            (&[1, 1, 1, 1], qr(-1, 720)),
            (&[2, 1, 1], qr(4, 720)),
            (&[2, 2], qr(3, 720)),
            (&[3, 1], qr(1, 720)),
            (&[4], qr(-1, 720)),
        ])
    );
}

#[test]
fn curve_genus() {
    for h in 0..5i64 {
        let c1 = q(2 - 2 * h);
        let got = genus_from_chern_numbers(1, 1, &BTreeMap::from([(vec![1], c1)])).unwrap();
        let mut want = Poly::zero(1);
        want.add_term(vec![0], q(1 - h));
        want.add_term(vec![1], q(1 - h));
        assert_eq!(got, want);
    }
}

#[test]
fn cstring_identity() {
    for n in 1..=3 {
        for g in 1..=2 {
            let checks = check_cstring(n, g).unwrap();
            assert!(!checks.is_empty());
            assert!(checks.iter().all(|c| c.matches), "n={n} g={g}");
        }
    }
}

#[test]
fn surface_values() {
    assert_eq!(evaluate_surface_rr(0).unwrap(), BigInt::from(2));
    assert_eq!(evaluate_surface_rr(1).unwrap(), BigInt::from(-20));
    assert_eq!(evaluate_surface_rr(3).unwrap(), BigInt::from(-272));
}

#[test]
fn k3_tables() {
    let t1 = build_k3_table(1).unwrap();
    let g1 = genus_from_table(&t1);
    let mut want = Poly::zero(1);
    for (e, c) in [(0, 2), (1, 20), (2, 2)] {
        want.add_term(vec![e], q(c));
    }
    assert_eq!(g1, want);
    assert_eq!(g1.eval(&[q(1)]).unwrap(), q(24));
    assert_eq!(supertrace(&t1).eval(&[q(1)]).unwrap(), q(24));
    assert_eq!(trace_on_hq(&t1, 1, None), Poly::constant(1, q(20)));
    let t3 = build_k3_table(3).unwrap();
    assert_eq!(t3.get(&[1, 1, 1], 1), 272);
}

#[test]
fn k3_supertrace_is_the_genus() {
    for g in 1..=3 {
        let t = build_k3_table(g).unwrap();
        let st = supertrace(&t);
        assert_eq!(st.shift(&vec![1; g]), genus_from_chern_numbers(2, g, &k3_numbers()).unwrap());
        assert_eq!(st.shift(&vec![1; g]), genus_from_table(&t));
        for i in 0..g {
            assert_eq!(st.invert_vars(&[i]), st);
        }
        let back = chern_numbers_from_genus(2, &genus_from_table(&t)).unwrap();
        if g >= 2 {
            assert_eq!(back, k3_numbers());
        }
    }
}

#[test]
fn catalan_counts() {
    for k in 0..=8 {
        assert_eq!(catalan(k), BigInt::from(ballot_sequences(k)));
    }
    for m in 0..=12usize {
        // Zero-weight vectors minus weight-2 vectors in (C^2)^{⊗m}.
        let count = |w: i32| (0u32..1 << m).filter(|x| 2 * x.count_ones() as i32 - m as i32 == w).count() as i64;
        assert_eq!(su2_invariant_dim(m), BigInt::from(count(0) - count(2)));
    }
}

fn chern_numbers() -> impl Strategy<Value = (usize, ChernNumbers)> {
    (1usize..=3).prop_flat_map(|n| {
        let keys = partitions(n, n);
        let len = keys.len();
        (Just(n), prop::collection::vec((-50i64..=50, 1i64..=6), len)).prop_map(move |(n, vals)| {
            let map: ChernNumbers = keys.iter().cloned().zip(vals.iter().map(|&(a, b)| qr(a, b))).collect();
            (n, map)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chern_numbers_round_trip((n, numbers) in chern_numbers()) {
        let genus = genus_from_chern_numbers(n, n, &numbers).unwrap();
        let back = chern_numbers_from_genus(n, &genus).unwrap();
        prop_assert_eq!(back, numbers);
    }

    #[test]
    fn genus_is_linear((n, a) in chern_numbers(), s in -5i64..=5) {
        let scaled: ChernNumbers = a.iter().map(|(k, v)| (k.clone(), v * q(s))).collect();
        let lhs = genus_from_chern_numbers(n, 2, &scaled).unwrap();
        let rhs = genus_from_chern_numbers(n, 2, &a).unwrap().scale(&Q::from_integer(s.into()));
        prop_assert_eq!(lhs, rhs);
    }
}
