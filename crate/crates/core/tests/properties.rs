use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use all2sat::harness::brute_force_models;
use all2sat::{
    count_models, enumerate_cubes, enumerate_models, enumerate_partial, expand_cube, parse_dimacs, Clause2, Cnf2,
    Literal,
};

fn literal(n: usize) -> impl Strategy<Value = Literal> {
    (1..=n, any::<bool>()).prop_map(|(v, p)| Literal::new(v, p))
}

/// Formulas with tautologies, repeated clauses, `u ∨ u` and units mixed in.
fn formula() -> impl Strategy<Value = Cnf2> {
    (1usize..=10).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec((literal(n), literal(n)), 0..=2 * n),
            prop::collection::vec(literal(n), 0..=2),
        )
            .prop_map(|(n, pairs, units)| {
                let clauses = pairs.into_iter().map(|(a, b)| Clause2::new(a, b)).collect();
                Cnf2::new(n, clauses, units).unwrap()
            })
    })
}

fn brute(f: &Cnf2) -> BTreeSet<String> {
    brute_force_models(f).unwrap().iter().map(|a| a.to_bitstring()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn enumeration_is_exact(f in formula()) {
        let listed: Vec<String> = enumerate_models(&f).map(|a| a.to_bitstring()).collect();
        let set: BTreeSet<String> = listed.iter().cloned().collect();
        prop_assert_eq!(listed.len(), set.len());
        prop_assert_eq!(set, brute(&f));
    }

    #[test]
    fn counting_and_cubes_are_exact(f in formula()) {
        let expect = brute(&f);
        prop_assert_eq!(count_models(&f).count, BigUint::from(expect.len()));
        let mut cubes = enumerate_cubes(&f);
        let Some(inst) = cubes.instance().cloned() else {
            prop_assert!(expect.is_empty());
            return Ok(());
        };
        let mut seen = BTreeSet::new();
        for cube in &mut cubes {
            for m in expand_cube(&cube, &inst) {
                prop_assert!(seen.insert(m.to_bitstring()));
            }
        }
        prop_assert_eq!(seen, expect);
    }

    #[test]
    fn dimacs_round_trip_keeps_models(f in formula()) {
        let g = parse_dimacs(&f.to_dimacs()).unwrap();
        prop_assert_eq!(brute(&g), brute(&f));
    }

    #[test]
    fn partial_models_are_projections(f in formula(), picks in prop::collection::vec((1usize..=10, any::<bool>()), 1..4)) {
        let n = f.num_vars();
        let vstar: Vec<Literal> = picks.iter().map(|&(v, p)| Literal::new((v - 1) % n + 1, p)).collect();
        let stream = enumerate_partial(&f, &vstar).unwrap();
        let order = stream.literals().to_vec();
        let got: BTreeSet<Vec<bool>> = stream.map(|pm| pm.values).collect();
        let expect: BTreeSet<Vec<bool>> = brute_force_models(&f)
            .unwrap()
            .iter()
            .map(|a| order.iter().map(|l| l.eval(a)).collect())
            .collect();
        prop_assert_eq!(got, expect);
    }
}
