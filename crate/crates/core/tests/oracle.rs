mod common;

use std::sync::Arc;

use edgereg::betti::{betti_table, regularity, EngineConfig, Field};
use edgereg::monomial::{Monomial, MonomialIdeal, VariableSet};
use edgereg::{edge_ideal, make_cycle, WeightedDigraph};
use proptest::prelude::*;

fn ideal_from(nvars: usize, gens: &[Vec<u32>]) -> MonomialIdeal {
    let vars = Arc::new(VariableSet::indexed("x", nvars));
    MonomialIdeal::new(vars, gens.iter().map(|g| Monomial::from_dense(g))).unwrap()
}

fn dense(ideal: &MonomialIdeal) -> Vec<Vec<u32>> {
    ideal.generators().iter().map(|g| g.to_dense(ideal.nvars())).collect()
}

fn random_gens(nvars: usize, max_gens: usize, max_exp: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, nvars), 1..=max_gens)
        .prop_filter("needs a non-unit generator", |g| g.iter().all(|m| m.iter().any(|&e| e > 0)))
}

#[test]
fn oracle_sanity() {
    // (x, y): Koszul
    let t = common::taylor_betti(&[vec![1, 0], vec![0, 1]]);
    assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![((0, 1), 2), ((1, 2), 1)]);
    // three variables: 3, 3, 1
    let t = common::taylor_betti(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![((0, 1), 3), ((1, 2), 3), ((2, 3), 1)]);
}

#[test]
fn small_cycle_powers_match_taylor() {
    for w in [[2, 2, 2], [2, 3, 2], [3, 3, 3]] {
        for t in 1..=2 {
            let ideal = edge_ideal(&make_cycle(&w).unwrap()).unwrap().power(t).unwrap();
            let expected = common::taylor_betti(&dense(&ideal));
            let table = betti_table(&ideal, &EngineConfig::default()).unwrap();
            assert_eq!(table.graded(), &expected, "weights {w:?}, t = {t}");
            assert_eq!(regularity(&ideal, &EngineConfig::default()).unwrap().value, common::table_regularity(&expected));
        }
    }
}

#[test]
fn path_and_star_match_taylor() {
    let path = WeightedDigraph::indexed(&[1, 2, 3, 2, 2], &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
    let star = WeightedDigraph::indexed(&[1, 3, 2, 2], &[(0, 1), (0, 2), (0, 3)]).unwrap();
    for g in [path, star] {
        let ideal = edge_ideal(&g).unwrap();
        let table = betti_table(&ideal, &EngineConfig::default()).unwrap();
        assert_eq!(table.graded(), &common::taylor_betti(&dense(&ideal)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn engine_matches_taylor(gens in random_gens(4, 6, 3)) {
        let ideal = ideal_from(4, &gens);
        let expected = common::taylor_betti(&dense(&ideal));
        for field in [Field::Rationals, Field::Gf2] {
            let table = betti_table(&ideal, &EngineConfig::with_field(field)).unwrap();
            // no torsion is possible on at most four variables
            prop_assert_eq!(table.graded(), &expected, "field {} for {}", field, ideal);
        }
    }

    #[test]
    fn engine_matches_taylor_squarefree(gens in random_gens(6, 7, 1)) {
        let ideal = ideal_from(6, &gens);
        let table = betti_table(&ideal, &EngineConfig::default()).unwrap();
        prop_assert_eq!(table.graded(), &common::taylor_betti(&dense(&ideal)), "{}", ideal);
    }

    #[test]
    fn unpruned_engine_matches_taylor(gens in random_gens(3, 5, 3)) {
        let ideal = ideal_from(3, &gens);
        let config = EngineConfig { prune: false, parallel: false, ..EngineConfig::default() };
        let table = betti_table(&ideal, &config).unwrap();
        prop_assert_eq!(table.graded(), &common::taylor_betti(&dense(&ideal)));
    }
}
