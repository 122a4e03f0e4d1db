//! Seeded random automata for property tests and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::acceptance::{Acceptance, WeakMullerCondition};
use crate::automaton::{Automaton, Letter, StateSet};

pub fn plain_alphabet(size: usize) -> Vec<Letter> {
    (0..size).map(|i| Letter::plain(((b'a' + i as u8) as char).to_string())).collect()
}

/// Product alphabet `{0..inputs} × {0..outputs}`, input-major.
pub fn pair_alphabet(inputs: usize, outputs: usize) -> Vec<Letter> {
    (0..inputs)
        .flat_map(|i| (0..outputs).map(move |o| Letter::pair(i.to_string(), o.to_string())))
        .collect()
}

/// Every subset of `{0..width}` is included independently with
/// probability one half.
pub fn random_family(rng: &mut impl Rng, width: usize) -> Vec<StateSet> {
    (0u32..1 << width)
        .filter(|_| rng.gen_bool(0.5))
        .map(|mask| StateSet::from_states(width, (0..width).filter(|q| mask >> q & 1 == 1)))
        .collect()
}

/// Random transition structure with the given acceptance. Deterministic
/// automata get a uniformly random successor per (state, letter);
/// otherwise each (state, letter) gets a random, possibly empty, set of
/// successors.
pub fn random_automaton<R: Rng>(
    rng: &mut R,
    states: usize,
    alphabet: Vec<Letter>,
    deterministic: bool,
    acceptance: impl FnOnce(&mut R) -> Acceptance,
) -> Automaton {
    let m = alphabet.len();
    let mut transitions = Vec::new();
    for q in 0..states {
        for a in 0..m {
            if deterministic {
                transitions.push((q, a, rng.gen_range(0..states)));
            } else {
                let mut targets: Vec<usize> = (0..states).collect();
                targets.shuffle(rng);
                let k = rng.gen_range(0..=states.min(2));
                transitions.extend(targets[..k].iter().map(|&r| (q, a, r)));
            }
        }
    }
    let acceptance = acceptance(rng);
    Automaton::new((0..states).map(|q| format!("q{q}")).collect(), alphabet, 0, transitions, acceptance)
        .expect("random automaton is well formed")
}

/// A random weak Muller automaton with an explicit condition.
pub fn random_weak_muller<R: Rng>(rng: &mut R, states: usize, letters: usize, deterministic: bool) -> Automaton {
    random_automaton(rng, states, plain_alphabet(letters), deterministic, |r| {
        Acceptance::WeakMuller(WeakMullerCondition::Explicit(random_family(r, states)))
    })
}
