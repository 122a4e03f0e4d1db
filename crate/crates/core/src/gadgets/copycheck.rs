use crate::acceptance::{Acceptance, WeakMullerCondition};
use crate::automaton::{Automaton, AutomatonBuilder};
use crate::formula::Formula;

use super::{binary_pairs, cell, check_range, GadgetError, MAX_N};

/// Accepts `(α, β)` iff `β(i) = α(n+i)` for `i < n`.
///
/// Two chained bit stores: `G1` records the output bits of the first n
/// letters, `G2` the input bits of the next n letters, then an absorbing
/// `done` state. The condition is `⋀ᵢ G1⟨i/0⟩ ↔ G2⟨i/0⟩`.
pub fn copy_check(n: usize) -> Result<Automaton, GadgetError> {
    check_range("copycheck", n, 1, MAX_N)?;
    let alphabet = binary_pairs();
    let mut b = AutomatonBuilder::new(alphabet.clone());
    let start = b.state("q_I");
    let g1: Vec<[usize; 2]> = (0..n).map(|i| [b.state(cell("G1", i, 0)), b.state(cell("G1", i, 1))]).collect();
    let g2: Vec<[usize; 2]> = (0..n).map(|i| [b.state(cell("G2", i, 0)), b.state(cell("G2", i, 1))]).collect();
    let done = b.state("done");
    // letter index = 2·input + output
    for l in 0..4 {
        let (x, y) = (l / 2, l % 2);
        b.edge(start, l, g1[0][y]);
        b.edge(done, l, done);
        for i in 0..n {
            for v in 0..2 {
                let to1 = if i + 1 < n { g1[i + 1][y] } else { g2[0][x] };
                b.edge(g1[i][v], l, to1);
                let to2 = if i + 1 < n { g2[i + 1][x] } else { done };
                b.edge(g2[i][v], l, to2);
            }
        }
    }
    let f = Formula::and((0..n).map(|i| Formula::iff(Formula::var(g1[i][0]), Formula::var(g2[i][0]))));
    Ok(b.build(start, Acceptance::WeakMuller(WeakMullerCondition::EmersonLei(f))).expect("copy check is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_and_formula() {
        let a = copy_check(4).unwrap();
        assert_eq!(a.num_states(), 18);
        assert!(a.is_deterministic());
        let Acceptance::WeakMuller(WeakMullerCondition::EmersonLei(f)) = a.acceptance() else { panic!() };
        let named = f.map_vars(|&q| a.state_name(q).to_string());
        assert!(named.to_string().starts_with("(G1⟨0/0⟩ <-> G2⟨0/0⟩) & "));
    }
}
