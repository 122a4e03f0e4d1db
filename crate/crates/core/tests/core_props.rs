mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use delaygame::formula::{self, Formula};
use delaygame::jpair::{contains_bad_jpair, first_bad_jpair, RankedWord};
use delaygame::product::product;
use delaygame::random::random_weak_muller;
use delaygame::{lasso_accepts, lasso_accepts_graph, parse_automaton, serialize_automaton, Lasso};

use common::{naive_bad_pairs, oracle_accepts};

const VARS: [&str; 4] = ["a", "b", "q_1", "x y"];

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        (0..VARS.len()).prop_map(|i| Formula::Var(VARS[i].to_string())),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::Implies(Box::new(l), Box::new(r))),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::Iff(Box::new(l), Box::new(r))),
        ]
    })
}

fn lasso_strategy(letters: usize) -> impl Strategy<Value = Lasso> {
    (prop::collection::vec(0..letters, 0..6), prop::collection::vec(0..letters, 1..5))
        .prop_map(|(u, v)| Lasso::new(u, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn formulas_print_and_parse_back(f in formula_strategy()) {
        let text = f.to_string();
        let g = formula::parse(&text).unwrap();
        prop_assert_eq!(g.to_string(), text.clone());
        for mask in 0u32..1 << VARS.len() {
            let set: Vec<&str> = (0..VARS.len()).filter(|i| mask >> i & 1 == 1).map(|i| VARS[i]).collect();
            prop_assert_eq!(
                f.eval_named(&VARS, &set).unwrap(),
                g.eval_named(&VARS, &set).unwrap(),
                "{}", text
            );
        }
    }

    #[test]
    fn automata_survive_json(seed in any::<u64>(), states in 1usize..6, letters in 1usize..4, det in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_weak_muller(&mut rng, states, letters, det);
        prop_assert_eq!(parse_automaton(&serialize_automaton(&a)).unwrap(), a);
    }

    #[test]
    fn membership_routes_agree(seed in any::<u64>(), states in 1usize..6, l in lasso_strategy(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_weak_muller(&mut rng, states, 3, true);
        let det = lasso_accepts(&a, &l).unwrap();
        prop_assert_eq!(det, lasso_accepts_graph(&a, &l).unwrap());
        prop_assert_eq!(det, oracle_accepts(&a, &l));
        prop_assert_eq!(det, lasso_accepts(&a, &l.unrolled()).unwrap());
    }

    #[test]
    fn nondeterministic_membership_matches_oracle(seed in any::<u64>(), states in 1usize..5, l in lasso_strategy(2)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_weak_muller(&mut rng, states, 2, false);
        prop_assert_eq!(lasso_accepts_graph(&a, &l).unwrap(), oracle_accepts(&a, &l));
    }

    #[test]
    fn bad_pairs_match_the_definition(n in 1usize..5, raw in prop::collection::vec(any::<usize>(), 0..24)) {
        let letters: Vec<usize> = raw.iter().map(|x| x % n).collect();
        let w = RankedWord::new(n, letters.clone()).unwrap();
        let naive = naive_bad_pairs(&letters);
        let first = naive.iter().map(|&(_, _, q)| q).min();
        match first_bad_jpair(&w) {
            Some((j, p, q)) => {
                prop_assert_eq!(Some(q), first);
                prop_assert!(naive.contains(&(j, p, q)));
            }
            None => prop_assert!(naive.is_empty()),
        }
        for j in 0..n {
            let got = contains_bad_jpair(&w, j).unwrap();
            let want = naive.iter().filter(|t| t.0 == j).map(|&(_, p, q)| (p, q)).min_by_key(|&(p, q)| (q, std::cmp::Reverse(p)));
            prop_assert_eq!(got, want);
        }
    }

    #[test]
    fn product_accepts_the_intersection(seed in any::<u64>(), l in lasso_strategy(2)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_weak_muller(&mut rng, 3, 2, true);
        let b = random_weak_muller(&mut rng, 3, 2, true);
        let p = product(&a, &b, true).unwrap();
        let both = lasso_accepts(&a, &l).unwrap() && lasso_accepts(&b, &l).unwrap();
        prop_assert_eq!(lasso_accepts(&p, &l).unwrap(), both);
    }
}
