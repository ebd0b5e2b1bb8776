use std::collections::BTreeMap;
use std::sync::Arc;

use edgereg::betti::{betti_table, private_variable_regularity, regularity, EngineConfig};
use edgereg::monomial::{Monomial, MonomialIdeal, VariableSet};
use proptest::prelude::*;

const NVARS: usize = 4;

fn vars(n: usize) -> Arc<VariableSet> {
    Arc::new(VariableSet::indexed("x", n))
}

fn ideal_on(n: usize, gens: &[Vec<u32>]) -> MonomialIdeal {
    MonomialIdeal::new(vars(n), gens.iter().map(|g| Monomial::from_dense(g))).unwrap()
}

fn mono() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=3u32, NVARS)
}

fn nonunit_mono(n: usize, max_exp: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max_exp, n).prop_filter("non-unit", |m| m.iter().any(|&e| e > 0))
}

fn gens(n: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(nonunit_mono(n, max_exp), 1..=max_gens)
}

fn reg(i: &MonomialIdeal) -> i64 {
    regularity(i, &EngineConfig::default()).unwrap().value
}

/// Membership straight from the definition.
fn member(gens: &[Vec<u32>], u: &[u32]) -> bool {
    gens.iter().any(|g| g.iter().zip(u).all(|(a, b)| a <= b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn generators_are_minimal_and_ordered(g in gens(NVARS, 6, 3)) {
        let i = ideal_on(NVARS, &g);
        let gs = i.generators();
        for (a, x) in gs.iter().enumerate() {
            for (b, y) in gs.iter().enumerate() {
                prop_assert!(a == b || !x.divides(y));
            }
        }
        prop_assert!(gs.windows(2).all(|p| p[0].grlex_cmp(&p[1]).is_lt()));
        for m in &g {
            prop_assert!(i.contains(&Monomial::from_dense(m)));
        }
        let dense: Vec<Vec<u32>> = gs.iter().map(|x| x.to_dense(NVARS)).collect();
        for m in &g {
            prop_assert!(member(&dense, m));
        }
    }

    #[test]
    fn text_round_trip(g in gens(NVARS, 5, 3)) {
        let i = ideal_on(NVARS, &g);
        let back = MonomialIdeal::parse(&i.to_string(), vars(NVARS)).unwrap();
        prop_assert_eq!(back.generators(), i.generators());
    }

    #[test]
    fn colon_contracts(g in gens(NVARS, 5, 3), m in mono(), u in mono()) {
        let i = ideal_on(NVARS, &g);
        let m = Monomial::from_dense(&m);
        let c = i.colon_by_monomial(&m).unwrap();
        prop_assert!(c.contains_ideal(&i));
        prop_assert!(i.contains_ideal(&c.multiply_by(&m).unwrap()));
        let u = Monomial::from_dense(&u);
        let um = u.checked_mul(&m, u64::MAX).unwrap();
        prop_assert_eq!(c.contains(&u), i.contains(&um));
    }

    #[test]
    fn colon_tower(g in gens(NVARS, 5, 3), a in mono(), b in mono()) {
        let i = ideal_on(NVARS, &g);
        let (a, b) = (Monomial::from_dense(&a), Monomial::from_dense(&b));
        let ab = a.checked_mul(&b, u64::MAX).unwrap();
        let stepwise = i.colon_by_monomial(&a).unwrap().colon_by_monomial(&b).unwrap();
        prop_assert_eq!(stepwise.generators().to_vec(), i.colon_by_monomial(&ab).unwrap().generators().to_vec());
    }

    #[test]
    fn colon_by_ideal_membership(g in gens(NVARS, 4, 3), h in gens(NVARS, 3, 2), u in mono()) {
        let (i, j) = (ideal_on(NVARS, &g), ideal_on(NVARS, &h));
        let c = i.colon_by_ideal(&j).unwrap();
        let u_m = Monomial::from_dense(&u);
        let expected = h.iter().all(|x| {
            let prod: Vec<u32> = x.iter().zip(&u).map(|(a, b)| a + b).collect();
            member(&g, &prod)
        });
        prop_assert_eq!(c.contains(&u_m), expected);
    }

    #[test]
    fn intersection_and_sum(g in gens(NVARS, 4, 3), h in gens(NVARS, 4, 3), u in mono()) {
        let (i, j) = (ideal_on(NVARS, &g), ideal_on(NVARS, &h));
        let both = i.intersect(&j).unwrap();
        let either = i.sum(&j).unwrap();
        prop_assert!(i.contains_ideal(&both) && j.contains_ideal(&both));
        prop_assert!(either.contains_ideal(&i) && either.contains_ideal(&j));
        let um = Monomial::from_dense(&u);
        prop_assert_eq!(both.contains(&um), member(&g, &u) && member(&h, &u));
        prop_assert_eq!(either.contains(&um), member(&g, &u) || member(&h, &u));
        prop_assert_eq!(both.generators().to_vec(), j.intersect(&i).unwrap().generators().to_vec());
    }

    #[test]
    fn powers_add(g in gens(3, 3, 2), a in 1u32..=2, b in 1u32..=2) {
        let i = ideal_on(3, &g);
        let lhs = i.power(a).unwrap().product(&i.power(b).unwrap()).unwrap();
        prop_assert_eq!(lhs.generators().to_vec(), i.power(a + b).unwrap().generators().to_vec());
        let mut direct = i.clone();
        for _ in 1..a {
            direct = direct.product(&i).unwrap();
        }
        prop_assert_eq!(direct.generators().to_vec(), i.power(a).unwrap().generators().to_vec());
    }

    #[test]
    fn polarization_keeps_the_table(g in gens(NVARS, 4, 3)) {
        let i = ideal_on(NVARS, &g);
        let (p, _) = i.polarize().unwrap();
        prop_assert!(p.is_squarefree());
        let config = EngineConfig::default();
        prop_assert!(betti_table(&i, &config).unwrap().same_graded(&betti_table(&p, &config).unwrap()));
    }

    #[test]
    fn first_column_is_generator_degrees(g in gens(NVARS, 6, 3)) {
        let i = ideal_on(NVARS, &g);
        let table = betti_table(&i, &EngineConfig::default()).unwrap();
        let mut degrees = BTreeMap::new();
        for x in i.generators() {
            *degrees.entry(x.degree()).or_insert(0usize) += 1;
        }
        let col: BTreeMap<u64, usize> = table.entries().filter(|((k, _), _)| *k == 0).map(|((_, d), r)| (d, r)).collect();
        prop_assert_eq!(col, degrees);
    }

    #[test]
    fn disjoint_supports_add(g in gens(3, 3, 3), h in gens(3, 3, 3)) {
        // g on x1..x3, h on x4..x6
        let left: Vec<Vec<u32>> = g.iter().map(|m| [m.clone(), vec![0; 3]].concat()).collect();
        let right: Vec<Vec<u32>> = h.iter().map(|m| [vec![0; 3], m.clone()].concat()).collect();
        let (i, j) = (ideal_on(6, &left), ideal_on(6, &right));
        prop_assert_eq!(reg(&i.sum(&j).unwrap()), reg(&i) + reg(&j) - 1);
    }

    #[test]
    fn monomial_shift(g in gens(3, 4, 3), u in nonunit_mono(2, 3)) {
        let base: Vec<Vec<u32>> = g.iter().map(|m| [m.clone(), vec![0; 2]].concat()).collect();
        let i = ideal_on(5, &base);
        let u = Monomial::from_dense(&[vec![0; 3], u].concat());
        prop_assert_eq!(reg(&i.multiply_by(&u).unwrap()), reg(&i) + u.degree() as i64);
    }

    #[test]
    fn induced_subsets_do_not_raise_regularity(g in gens(6, 6, 1), keep in prop::collection::vec(any::<bool>(), 6)) {
        let i = ideal_on(6, &g);
        let subset: Vec<usize> = (0..6).filter(|&v| keep[v]).collect();
        let sub = i.restrict_to(&subset);
        if !sub.is_zero() {
            prop_assert!(reg(&sub) <= reg(&i));
        }
    }

    #[test]
    fn private_variables_agree(g in gens(6, 4, 1)) {
        let i = ideal_on(6, &g);
        if let Some(fast) = private_variable_regularity(&i).unwrap() {
            prop_assert_eq!(fast, reg(&i));
        }
    }
}

#[test]
fn pure_powers() {
    for d in 1..=8 {
        let i = ideal_on(1, &[vec![d]]);
        assert_eq!(reg(&i), d as i64);
    }
}

#[test]
fn private_variable_examples() {
    let v = vars(4);
    let i = MonomialIdeal::parse("(x1*x2, x3*x4)", Arc::clone(&v)).unwrap();
    assert_eq!(private_variable_regularity(&i).unwrap(), Some(3));
    let tri = MonomialIdeal::parse("(x1*x2, x2*x3, x1*x3)", v).unwrap();
    assert_eq!(private_variable_regularity(&tri).unwrap(), None);
    assert!(private_variable_regularity(&ideal_on(2, &[vec![2, 1]])).is_err());
}
