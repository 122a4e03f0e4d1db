use crate::acceptance::Acceptance;
use crate::automaton::{Automaton, AutomatonBuilder, StateSet};

use super::{binary_pairs, check_range, GadgetError, MAX_N};

/// Name of the adder state `res(k, b, c)`: bit k of the sum is b, carry c.
pub fn adder_state(prefix: &str, k: usize, b: usize, c: usize) -> String {
    format!("{prefix}⟨{k}/{b}/{c}⟩")
}

/// Adds two n-bit numbers given least significant bit first, the first
/// over the input and the second over the output component. After column
/// `n−1` the next letter starts a fresh addition at column 0.
///
/// `res(0, 1, 1)` cannot occur and is omitted, so the gadget has a start
/// state and `4n − 1` result states.
pub fn add_gadget(n: usize) -> Result<Automaton, GadgetError> {
    check_range("addgadget", n, 1, MAX_N)?;
    let mut b = AutomatonBuilder::new(binary_pairs());
    let start = b.state("start");
    for k in 0..n {
        for r in 0..2 {
            for c in 0..2 {
                if (k, r, c) != (0, 1, 1) {
                    b.state(adder_state("", k, r, c));
                }
            }
        }
    }
    let column0 = |b: &mut AutomatonBuilder, x: usize, y: usize| b.state(adder_state("", 0, (x + y) % 2, (x + y) / 2));
    for l in 0..4 {
        let (x, y) = (l / 2, l % 2);
        let to = column0(&mut b, x, y);
        b.edge(start, l, to);
        for k in 0..n {
            for r in 0..2 {
                for c in 0..2 {
                    let Some(src) = b.lookup(&adder_state("", k, r, c)) else { continue };
                    let to = if k + 1 < n {
                        let s = x + y + c;
                        b.state(adder_state("", k + 1, s % 2, s / 2))
                    } else {
                        column0(&mut b, x, y)
                    };
                    b.edge(src, l, to);
                }
            }
        }
    }
    let states = b.num_states();
    Ok(b.build(start, Acceptance::Safety(StateSet::full(states))).expect("adder is well formed"))
}
