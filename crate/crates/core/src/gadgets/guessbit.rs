use std::collections::BTreeSet;

use crate::acceptance::Acceptance;
use crate::automaton::{Automaton, AutomatonBuilder, AutomatonError, Letter, LetterId, StateSet};

use super::{bit_state, check_range, GadgetError, MAX_N};

/// Non-deterministically commits to one position i of an n-bit block and
/// stores `(i, bit)` by visiting `⟨i/bit⟩`.
///
/// Skip states `s0…s(n−2)` pass over the positions before the commitment;
/// after committing, the chains `a1…a(n−1)` (bit 0) and `b1…b(n−1)`
/// (bit 1) consume the rest of the block. The final states are absorbing.
/// In total 5n − 2 states.
pub fn guess_bit(n: usize) -> Result<Automaton, GadgetError> {
    check_range("guessbit", n, 1, MAX_N)?;
    let mut b = AutomatonBuilder::new(vec![Letter::plain("0"), Letter::plain("1")]);
    let start = b.state("start");
    let skip: Vec<usize> = (0..n.saturating_sub(1)).map(|i| b.state(format!("s{i}"))).collect();
    let cells: Vec<[usize; 2]> = (0..n).map(|i| [b.state(bit_state(i, 0)), b.state(bit_state(i, 1))]).collect();
    let tails: [Vec<usize>; 2] =
        ["a", "b"].map(|p| (1..n).map(|i| b.state(format!("{p}{i}"))).collect());
    for l in 0..2 {
        b.edge(start, l, cells[0][l]);
        if let Some(&s0) = skip.first() {
            b.edge(start, l, s0);
        }
        for (i, &s) in skip.iter().enumerate() {
            b.edge(s, l, cells[i + 1][l]);
            if let Some(&next) = skip.get(i + 1) {
                b.edge(s, l, next);
            }
        }
        for (i, col) in cells.iter().enumerate() {
            for v in 0..2 {
                // ⟨i/v⟩ is followed by the tail state at position i+1
                let to = if i + 1 < n { tails[v][i] } else { col[v] };
                b.edge(col[v], l, to);
            }
        }
        for tail in &tails {
            for (i, &t) in tail.iter().enumerate() {
                b.edge(t, l, *tail.get(i + 1).unwrap_or(&t));
            }
        }
    }
    let states = b.num_states();
    Ok(b.build(start, Acceptance::Safety(StateSet::full(states))).expect("guess gadget is well formed"))
}

/// All records `(i, bit)` some run of the guess gadget stores while reading
/// `block`.
pub fn guess_bit_records(a: &Automaton, n: usize, block: &[LetterId]) -> Result<BTreeSet<(usize, usize)>, AutomatonError> {
    let mut out = BTreeSet::new();
    for (_, occ) in a.run_configurations(block)? {
        for i in 0..n {
            for v in 0..2 {
                if a.state_id(&bit_state(i, v)).is_some_and(|q| occ.contains(q)) {
                    out.insert((i, v));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_bit_block() {
        let a = guess_bit(4).unwrap();
        assert_eq!(a.num_states(), 18);
        assert!(!a.is_deterministic());
        let r = guess_bit_records(&a, 4, &a.parse_word("0110").unwrap()).unwrap();
        assert_eq!(r.into_iter().collect::<Vec<_>>(), [(0, 0), (1, 1), (2, 1), (3, 0)]);
    }

    #[test]
    fn single_bit() {
        let a = guess_bit(1).unwrap();
        assert_eq!(a.num_states(), 3);
        let r = guess_bit_records(&a, 1, &a.parse_word("1").unwrap()).unwrap();
        assert_eq!(r.into_iter().collect::<Vec<_>>(), [(0, 1)]);
    }
}
