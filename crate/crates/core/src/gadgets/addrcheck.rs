use std::collections::HashMap;

use crate::acceptance::Acceptance;
use crate::automaton::{Automaton, AutomatonBuilder, Letter, StateSet};

use super::{check_range, GadgetError, MAX_N};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum St {
    /// Unmarked, next letter at this offset of a block (offset n is the `#`).
    Scan(usize),
    /// A bit was marked. `left` letters remain until the same offset of the
    /// next block; `value` is the marked bit, `ones` whether every bit after
    /// it in the marked block is 1, `crossed` whether the `#` was passed.
    Marked { left: usize, value: bool, ones: bool, crossed: bool },
    Correct,
    Faulty,
    Malformed,
}

impl St {
    fn name(self) -> String {
        match self {
            St::Scan(k) => format!("scan{k}"),
            St::Marked { left, value, ones, crossed } => {
                format!("mark{left}/{}{}{}", u8::from(value), u8::from(ones), if crossed { "#" } else { "" })
            }
            St::Correct => "correct".into(),
            St::Faulty => "faulty".into(),
            St::Malformed => "malformed".into(),
        }
    }

    fn step(self, n: usize, x: Option<bool>, marked: bool) -> St {
        match self {
            St::Correct | St::Faulty | St::Malformed => self,
            St::Scan(k) if k == n => match (x, marked) {
                (None, false) => St::Scan(0),
                _ => St::Malformed,
            },
            St::Scan(k) => match x {
                None => St::Malformed,
                Some(v) if marked => St::Marked { left: n, value: v, ones: true, crossed: false },
                Some(_) => St::Scan(k + 1),
            },
            St::Marked { left, value, ones, crossed } => {
                if left == 0 {
                    // this letter sits at the marked offset of the next block
                    let Some(w) = x else { return St::Malformed };
                    return if w == (value ^ ones) { St::Correct } else { St::Faulty };
                }
                match (x, crossed) {
                    (None, false) => St::Marked { left: left - 1, value, ones, crossed: true },
                    (Some(v), false) => St::Marked { left: left - 1, value, ones: ones && v, crossed },
                    (Some(_), true) => St::Marked { left: left - 1, value, ones, crossed },
                    (None, true) => St::Malformed,
                }
            }
        }
    }
}

/// Detects a wrong update of an address counter.
///
/// The input is a sequence of n-bit address blocks, most significant bit
/// first, each followed by `#`. The output marks bits with `✓` or `✗`. The
/// first `✗` marks a bit of the current block; the automaton then checks
/// the same bit of the next block. Incrementing flips a bit iff all bits to
/// its right are 1, so the expected value is `value ⊕ ones`. A mismatch
/// leads to `faulty`, a match to `correct`, a format violation or a `✗` on
/// a separator to `malformed`. The condition is reachability of `faulty`.
pub fn addr_update_checker(n: usize) -> Result<Automaton, GadgetError> {
    check_range("addrcheck", n, 1, MAX_N)?;
    let inputs = ["0", "1", "#"];
    let outputs = ["✓", "✗"];
    let alphabet: Vec<Letter> =
        inputs.iter().flat_map(|&i| outputs.iter().map(move |&o| Letter::pair(i, o))).collect();
    let mut b = AutomatonBuilder::new(alphabet);
    let mut index: HashMap<St, usize> = HashMap::new();
    let mut queue = vec![St::Scan(0)];
    index.insert(St::Scan(0), b.state(St::Scan(0).name()));
    let mut i = 0;
    while i < queue.len() {
        let s = queue[i];
        for (xi, _) in inputs.iter().enumerate() {
            for (yi, _) in outputs.iter().enumerate() {
                let x = (xi < 2).then_some(xi == 1);
                let t = s.step(n, x, yi == 1);
                let dst = *index.entry(t).or_insert_with(|| {
                    queue.push(t);
                    b.state(t.name())
                });
                b.edge(index[&s], xi * 2 + yi, dst);
            }
        }
        i += 1;
    }
    let width = b.num_states();
    let faulty = index.get(&St::Faulty).copied();
    let f = StateSet::from_states(width, faulty);
    Ok(b.build(0, Acceptance::Reachability(f)).expect("checker is well formed"))
}
