use proptest::prelude::*;
use skewsp::exalg::{Context, GeneratorId, Monomial, Multivector, SymplecticForm};
use skewsp::rational::{factorial, q, qr, Q};
use skewsp::spops::{
    check_commuting_actions, check_sp_relations, GroupElementFactored, GroupFactor, SpAction, SpVGenerator,
    SpgGenerator,
};

fn action(n: usize, g: usize) -> SpAction {
    SpAction::standard(n, g).unwrap()
}

fn basis_element(a: &SpAction, seed: u64) -> Multivector {
    let ctx = a.context();
    let mask = (1u64 << ctx.num_generators()) - 1;
    Multivector::monomial(ctx, Monomial(seed & mask), q(1))
}

fn group(factors: Vec<GroupFactor>) -> GroupElementFactored {
    GroupElementFactored { factors }
}

/// exp(t L_ij) α computed as exp(t ω) ∧ α with ω = L_ij(1), using only wedge products.
fn exp_l_oracle(a: &SpAction, i: usize, j: usize, t: &Q, x: &Multivector) -> Multivector {
    let ctx = a.context();
    let omega = a
        .apply_generator(SpgGenerator::l(i, j), &Multivector::one(ctx))
        .unwrap()
        .scale(t);
    let mut power = Multivector::one(ctx);
    let mut series = Multivector::zero(ctx);
    for k in 0..=ctx.num_generators() / 2 {
        let c = Q::new(1.into(), factorial(k as u64));
        series = series.add(&power.scale(&c)).unwrap();
        power = power.wedge(&omega).unwrap();
    }
    series.wedge(x).unwrap()
}

#[test]
fn l11_on_unit_and_lambda11_on_area() {
    let a = action(1, 1);
    let ctx = a.context();
    let area = Multivector::from_generators(ctx, &[GeneratorId::new(1, 1), GeneratorId::new(1, 2)]).unwrap();
    assert_eq!(a.apply_generator(SpgGenerator::l(1, 1), &Multivector::one(ctx)).unwrap(), area);
    assert_eq!(a.apply_generator(SpgGenerator::lambda(1, 1), &area).unwrap(), Multivector::one(ctx));
}

#[test]
fn area_form_is_sp_invariant() {
    let a = action(1, 1);
    let ctx = a.context();
    let area = Multivector::from_generators(ctx, &[GeneratorId::new(1, 1), GeneratorId::new(1, 2)]).unwrap();
    for x in SpVGenerator::spanning_set(a.form()) {
        assert!(a.apply_spv(&x, &area).unwrap().is_zero());
    }
}

#[test]
fn relations_hold_in_small_cases() {
    for (n, g) in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2)] {
        let report = check_sp_relations(n, g).unwrap();
        assert!(!report.is_empty());
        assert!(report.iter().all(|r| r.residual_norm_zero), "({n},{g})");
    }
}

#[test]
fn commuting_actions_in_small_cases() {
    for (n, g) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let report = check_commuting_actions(&action(n, g)).unwrap();
        assert!(report.iter().all(|r| r.residual_norm_zero), "({n},{g})");
    }
}

#[test]
fn flipped_form_breaks_relations() {
    let form = SymplecticForm::standard(1).with_flipped_entry(1, 2);
    let ctx = Context::new(1, 1).unwrap();
    let a = SpAction::new(ctx, form).unwrap();
    let report = skewsp::spops::check_sp_relations_with(&a).unwrap();
    assert!(report.iter().any(|r| !r.residual_norm_zero));
}

#[test]
fn exp_l11_on_unit_terminates() {
    let a = action(1, 1);
    let ctx = a.context();
    let t = qr(3, 2);
    let got = a
        .apply_group_element(&group(vec![GroupFactor::ExpL { i: 1, j: 1, t: t.clone() }]), &Multivector::one(ctx))
        .unwrap();
    let area = Multivector::from_generators(ctx, &[GeneratorId::new(1, 1), GeneratorId::new(1, 2)]).unwrap();
    assert_eq!(got, Multivector::one(ctx).add(&area.scale(&t)).unwrap());
}

#[test]
fn torus_scales_by_degree() {
    let a = action(2, 1);
    let y = qr(2, 3);
    for m in a.context().basis().unwrap() {
        let x = Multivector::monomial(a.context(), m, q(1));
        let got = a.apply_torus(&[y.clone()], &x).unwrap();
        let want = x.scale(&skewsp::rational::pow(&y, m.degree() as i64 - 2));
        assert_eq!(got, want);
    }
}

fn coupled() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (1usize..=2, 1usize..=2).prop_flat_map(|(n, g)| (Just(n), Just(g), 1..=g, 1..=g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exp_l_matches_wedge_exponential((n, g, i, j) in coupled(), seed in any::<u64>(), num in -4i64..=4, den in 1i64..=3) {
        let a = action(n, g);
        let t = qr(num, den);
        let x = basis_element(&a, seed);
        let got = a.apply_group_element(&group(vec![GroupFactor::ExpL { i, j, t: t.clone() }]), &x).unwrap();
        prop_assert_eq!(got, exp_l_oracle(&a, i, j, &t, &x));
    }

    #[test]
    fn one_parameter_subgroups((n, g, i, j) in coupled(), seed in any::<u64>(), s in -3i64..=3, t in -3i64..=3, lam in any::<bool>()) {
        let a = action(n, g);
        let x = basis_element(&a, seed);
        let f = |t: Q| if lam { GroupFactor::ExpLambda { i, j, t } } else { GroupFactor::ExpL { i, j, t } };
        let two = a.apply_group_element(&group(vec![f(q(s)), f(q(t))]), &x).unwrap();
        let one = a.apply_group_element(&group(vec![f(q(s + t))]), &x).unwrap();
        prop_assert_eq!(two, one);
        let inverse = a.apply_group_element(&group(vec![f(q(s)), f(q(-s))]), &x).unwrap();
        prop_assert_eq!(inverse, x);
    }

    #[test]
    fn torus_is_multiplicative((n, g, _i, _j) in coupled(), seed in any::<u64>(), ys in prop::collection::vec((1i64..=5, 1i64..=5), 2)) {
        let a = action(n, g);
        let x = basis_element(&a, seed);
        let y1: Vec<Q> = (0..g).map(|k| qr(ys[k % 2].0, ys[k % 2].1)).collect();
        let y2: Vec<Q> = (0..g).map(|k| qr(ys[(k + 1) % 2].1, ys[(k + 1) % 2].0 + 1)).collect();
        let prod: Vec<Q> = y1.iter().zip(&y2).map(|(u, v)| u * v).collect();
        let two = a.apply_torus(&y2, &a.apply_torus(&y1, &x).unwrap()).unwrap();
        prop_assert_eq!(two, a.apply_torus(&prod, &x).unwrap());
    }

    #[test]
    fn torus_conjugates_exp_l((n, g, i, j) in coupled(), seed in any::<u64>(), t in -3i64..=3, ys in prop::collection::vec(1i64..=4, 2)) {
        let a = action(n, g);
        let x = basis_element(&a, seed);
        let y: Vec<Q> = (0..g).map(|k| qr(ys[k % 2], k as i64 + 1)).collect();
        let y_inv: Vec<Q> = y.iter().map(|v| q(1) / v).collect();
        let lhs = a.apply_group_element(&group(vec![
            GroupFactor::Torus(y_inv),
            GroupFactor::ExpL { i, j, t: q(t) },
            GroupFactor::Torus(y.clone()),
        ]), &x).unwrap();
        let scaled = q(t) * &y[i - 1] * &y[j - 1];
        let rhs = a.apply_group_element(&group(vec![GroupFactor::ExpL { i, j, t: scaled }]), &x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn spv_combinations_commute_with_spg((n, g, i, j) in coupled(), seed in any::<u64>(), coefs in prop::collection::vec(-3i64..=3, 10)) {
        let a = action(n, g);
        let d = 2 * n;
        let span = SpVGenerator::spanning_set(a.form());
        let mut m = vec![vec![Q::from_integer(0.into()); d]; d];
        for (x, c) in span.iter().zip(coefs.iter().cycle()) {
            for r in 0..d {
                for s in 0..d {
                    m[r][s] += &x.matrix()[r][s] * q(*c);
                }
            }
        }
        let x = SpVGenerator::new(a.form(), m).unwrap();
        let v = basis_element(&a, seed);
        for gen in [SpgGenerator::l(i, j), SpgGenerator::lambda(i, j), SpgGenerator::h(i, j)] {
            let xy = a.apply_spv(&x, &a.apply_generator(gen, &v).unwrap()).unwrap();
            let yx = a.apply_generator(gen, &a.apply_spv(&x, &v).unwrap()).unwrap();
            prop_assert_eq!(xy, yx);
        }
    }

    #[test]
    fn generators_shift_multidegree((n, g, i, j) in coupled(), seed in any::<u64>()) {
        let a = action(n, g);
        let ctx = a.context();
        let v = basis_element(&a, seed);
        let start = v.terms().next().unwrap().0.multidegree(&ctx).degrees;
        for (gen, sign) in [(SpgGenerator::l(i, j), 1i64), (SpgGenerator::lambda(i, j), -1)] {
            let mut want: Vec<i64> = start.iter().map(|&p| p as i64).collect();
            want[i - 1] += sign;
            want[j - 1] += sign;
            for (m, _) in a.apply_generator(gen, &v).unwrap().terms() {
                let got: Vec<i64> = m.multidegree(&ctx).degrees.iter().map(|&p| p as i64).collect();
                prop_assert_eq!(&got, &want);
            }
        }
    }
}
