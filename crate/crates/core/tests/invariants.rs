mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use delaygame::formula::Formula;
use delaygame::gadgets::*;
use delaygame::jpair::{first_bad_jpair, jpair_free_word, RankedWord};
use delaygame::random::random_weak_muller;
use delaygame::{lasso_accepts, Lasso};

use common::{all_lassos, oracle_accepts};

fn words(n: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(len as u32)).map(move |mut c| {
        (0..len)
            .map(|_| {
                let d = c % n;
                c /= n;
                d
            })
            .collect()
    })
}

fn has_pair(n: usize, w: &[usize]) -> bool {
    first_bad_jpair(&RankedWord::new(n, w.to_vec()).unwrap()).is_some()
}

/// Two occurrences of j with only letters `≤ j` in between.
fn has_lax_pair(w: &[usize]) -> bool {
    (0..w.len()).any(|p| (p + 1..w.len()).any(|q| w[p] == w[q] && w[p + 1..q].iter().all(|&x| x <= w[p])))
}

#[test]
fn strict_and_lax_pairs_coincide() {
    for n in 1..=3 {
        for len in 0..=8 {
            for w in words(n, len) {
                assert_eq!(has_pair(n, &w), has_lax_pair(&w), "{w:?}");
            }
        }
    }
}

#[test]
fn bad_pairs_survive_extension() {
    for n in 1..=3 {
        for len in 0..=6 {
            for w in words(n, len).filter(|w| has_pair(n, w)) {
                for x in 0..n {
                    assert!(has_pair(n, &[w.as_slice(), &[x]].concat()));
                }
            }
        }
    }
}

#[test]
fn free_word_letter_counts_and_maximality() {
    for n in 1..=12 {
        let w = jpair_free_word(n).unwrap();
        assert_eq!(w.len(), (1 << n) - 1);
        for k in 0..n {
            assert_eq!(w.letters().iter().filter(|&&x| x == k).count(), 1 << (n - 1 - k));
        }
        for x in 0..n {
            assert!(has_pair(n, &[w.letters(), &[x]].concat()), "n={n} x={x}");
        }
    }
}

#[test]
fn address_checker_exhaustive() {
    for n in 1..=8 {
        let a = addr_update_checker(n).unwrap();
        let faulty = a.state_id("faulty").unwrap();
        let mask = (1u32 << n) - 1;
        for cur in 0..=mask {
            for t in 0..n {
                for next in 0..=mask {
                    // blocks most significant bit first; letter = 2·input + output
                    let mut word = Vec::with_capacity(2 * n + 2);
                    for (v, marked) in [(cur, true), (next, false)] {
                        for i in 0..n {
                            word.push(2 * (v >> (n - 1 - i) & 1) as usize + usize::from(marked && i == t));
                        }
                        word.push(4);
                    }
                    let (q, _) = a.run_det(&word).unwrap();
                    let pos = n - 1 - t;
                    let expected = (((cur + 1) & mask) >> pos & 1) != (next >> pos & 1);
                    assert_eq!(q == faulty, expected, "n={n} {cur}->{next} bit {t}");
                }
            }
        }
    }
}

#[test]
fn adder_exhaustive_up_to_six_bits() {
    for n in 5..=6 {
        let a = add_gadget(n).unwrap();
        for x in 0u32..1 << n {
            for y in 0u32..1 << n {
                let word: Vec<usize> = (0..n).map(|k| (2 * (x >> k & 1) + (y >> k & 1)) as usize).collect();
                let (q, _) = a.run_det(&word).unwrap();
                let sum = x + y;
                let name = adder_state("", n - 1, (sum >> (n - 1) & 1) as usize, (sum >> n) as usize);
                assert_eq!(a.state_name(q), name, "{x}+{y}");
            }
        }
    }
}

#[test]
fn superblocks_exhaustive() {
    for n in 1..=3 {
        for v in 0u64..1 << (1 << n) {
            assert_eq!(superblock_decode(n, &superblock_encode(n, v).unwrap()).unwrap(), v);
        }
    }
}

#[test]
fn pn_variants_agree_on_all_short_lassos() {
    let reach = pn_reach(2).unwrap();
    let explicit = pn_explicit_wdma(2).unwrap();
    for l in all_lassos(4, 3) {
        assert_eq!(lasso_accepts(&reach, &l).unwrap(), lasso_accepts(&explicit, &l).unwrap(), "{l:?}");
    }
}

#[test]
fn runs_visit_one_state_per_letter_and_grow() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let size = rng.gen_range(1..=5);
        let a = random_weak_muller(&mut rng, size, 3, true);
        let word: Vec<usize> = (0..rng.gen_range(0..12)).map(|_| rng.gen_range(0..3)).collect();
        let mut prev = a.run_det(&[]).unwrap().1;
        assert_eq!(prev.len(), 1);
        for i in 1..=word.len() {
            let (_, occ) = a.run_det(&word[..i]).unwrap();
            assert!(prev.is_subset(&occ));
            assert!(occ.len() <= prev.len() + 1);
            prev = occ;
        }
    }
}

#[test]
fn rotation_keeps_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for det in [true, false] {
        for _ in 0..100 {
            let size = rng.gen_range(1..=4);
            let a = random_weak_muller(&mut rng, size, 2, det);
            let u: Vec<usize> = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..2)).collect();
            let v: Vec<usize> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..2)).collect();
            let l = Lasso::new(u.clone(), v.clone()).unwrap();
            let r = Lasso::new([u, v.clone()].concat(), v).unwrap();
            assert_eq!(lasso_accepts(&a, &l).unwrap(), lasso_accepts(&a, &r).unwrap());
        }
    }
}

#[test]
fn deterministic_membership_exhaustive_on_small_automata() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let lassos = all_lassos(2, 3);
    for _ in 0..60 {
        let size = rng.gen_range(1..=3);
        let a = random_weak_muller(&mut rng, size, 2, true);
        for l in &lassos {
            assert_eq!(lasso_accepts(&a, l).unwrap(), oracle_accepts(&a, l));
        }
    }
}

fn random_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::Var(["p", "q", "r"][rng.gen_range(0..3)].to_string());
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, depth - 1)),
        1 => Formula::And(vec![random_formula(rng, depth - 1), random_formula(rng, depth - 1)]),
        _ => Formula::Or(vec![random_formula(rng, depth - 1), random_formula(rng, depth - 1)]),
    }
}

#[test]
fn de_morgan() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let universe = ["p", "q", "r"];
    for _ in 0..1000 {
        let (f, g) = (random_formula(&mut rng, 3), random_formula(&mut rng, 3));
        let set: Vec<&str> = universe.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let lhs = Formula::Not(Box::new(Formula::And(vec![f.clone(), g.clone()])));
        let rhs = Formula::Or(vec![Formula::Not(Box::new(f)), Formula::Not(Box::new(g))]);
        assert_eq!(lhs.eval_named(&universe, &set).unwrap(), rhs.eval_named(&universe, &set).unwrap());
    }
}
