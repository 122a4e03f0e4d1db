use crate::acceptance::Acceptance;
use crate::automaton::{Automaton, AutomatonBuilder, Letter, StateSet};

use super::{cell, check_range, GadgetError, MAX_N};

pub fn bit_state(i: usize, b: usize) -> String {
    cell("", i, b)
}

/// Stores an n-bit word: after reading `a₀…aₙ₋₁` the run has visited
/// exactly the states `⟨i/aᵢ⟩`. The last column is absorbing. The
/// acceptance is the trivial safety condition.
pub fn bit_store(n: usize) -> Result<Automaton, GadgetError> {
    check_range("bitstore", n, 1, MAX_N)?;
    let mut b = AutomatonBuilder::new(vec![Letter::plain("0"), Letter::plain("1")]);
    let start = b.state("q_I");
    let col: Vec<[usize; 2]> = (0..n).map(|i| [b.state(bit_state(i, 0)), b.state(bit_state(i, 1))]).collect();
    for bit in 0..2 {
        b.edge(start, bit, col[0][bit]);
    }
    for i in 0..n {
        for v in 0..2 {
            for bit in 0..2 {
                let to = if i + 1 < n { col[i + 1][bit] } else { col[i][v] };
                b.edge(col[i][v], bit, to);
            }
        }
    }
    let states = b.num_states();
    Ok(b.build(start, Acceptance::Safety(StateSet::full(states))).expect("bit store is well formed"))
}
