use crate::acceptance::{Acceptance, WeakMullerCondition};
use crate::automaton::{Automaton, AutomatonBuilder, Letter, StateSet};

use super::{check_range, GadgetError};

/// Largest n for which the Σₙ × Σₙ alphabet stays reasonable.
const MAX_PN: usize = 256;

struct Pn {
    automaton: Automaton,
    start: usize,
    fin: usize,
    gadgets: Vec<[usize; 2]>,
}

fn build(n: usize) -> Result<Pn, GadgetError> {
    check_range("pn", n, 1, MAX_PN)?;
    let mut alphabet = Vec::with_capacity(n * n);
    for i in 0..n {
        for o in 0..n {
            alphabet.push(Letter::pair(i.to_string(), o.to_string()));
        }
    }
    let mut b = AutomatonBuilder::new(alphabet);
    let start = b.state("q_I");
    let gadgets: Vec<[usize; 2]> =
        (0..n).map(|j| [b.state(format!("G{j}-left")), b.state(format!("G{j}-right"))]).collect();
    let fin = b.state("q_f");
    // Every move is defined, so the rejecting sink is never entered; it is
    // kept so that the automaton has the same shape as the general family.
    let rej = b.state("q_rej");
    for x in 0..n {
        for y in 0..n {
            let l = x * n + y;
            b.edge(start, l, gadgets[y][0]);
            b.edge(fin, l, fin);
            b.edge(rej, l, rej);
            for (j, &[left, right]) in gadgets.iter().enumerate() {
                b.edge(left, l, if x == j { right } else { left });
                let r = match x.cmp(&j) {
                    std::cmp::Ordering::Less => right,
                    std::cmp::Ordering::Greater => left,
                    std::cmp::Ordering::Equal => fin,
                };
                b.edge(right, l, r);
            }
        }
    }
    let states = b.num_states();
    let automaton = b.build(start, Acceptance::Safety(StateSet::full(states))).expect("pn is well formed");
    Ok(Pn { automaton, start, fin, gadgets })
}

/// The bad j-pair automaton over `Σₙ × Σₙ` as a reachability automaton
/// with target `{q_f}`: the first output letter j selects gadget `Gj`,
/// which reaches `q_f` exactly on a bad j-pair of the input from its
/// second letter on.
pub fn pn_reach(n: usize) -> Result<Automaton, GadgetError> {
    let p = build(n)?;
    let f = StateSet::singleton(p.automaton.num_states(), p.fin);
    Ok(p.automaton.with_acceptance(Acceptance::Reachability(f)).expect("valid"))
}

/// The same automaton with the explicit weak Muller family
/// `{F₀, …, Fₙ₋₁}`, `Fⱼ = {q_I, q_f, Gj-left, Gj-right}`.
pub fn pn_explicit_wdma(n: usize) -> Result<Automaton, GadgetError> {
    let p = build(n)?;
    let width = p.automaton.num_states();
    let sets = p.gadgets.iter().map(|&[l, r]| StateSet::from_states(width, [p.start, p.fin, l, r])).collect();
    Ok(p.automaton
        .with_acceptance(Acceptance::WeakMuller(WeakMullerCondition::Explicit(sets)))
        .expect("valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_trace() {
        let a = pn_reach(2).unwrap();
        assert_eq!(a.num_states(), 7);
        let w = a.parse_word("0,1 0,0 1,0 0,0 1,0").unwrap();
        let (q, _) = a.run_det(&w).unwrap();
        assert_eq!(a.state_name(q), "q_f");
    }
}
