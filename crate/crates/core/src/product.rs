//! Synchronous product of deterministic automata with global sinks and
//! Emerson-Lei formula rewriting.

use thiserror::Error;

use crate::acceptance::{Acceptance, WeakMullerCondition};
use crate::automaton::{Automaton, AutomatonBuilder, AutomatonError, StateId, StateSet};
use crate::formula::Formula;

/// State-name prefixes marking global sinks.
pub const SINK_PREFIXES: [&str; 4] = ["q_acc", "q_rej", "q_A", "q_R"];

pub fn is_sink_name(name: &str) -> bool {
    SINK_PREFIXES.iter().any(|p| name.starts_with(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("components have different alphabets")]
    AlphabetMismatch,
    #[error("sink state `{0}` is not absorbing")]
    NonAbsorbingSink(String),
    #[error("formula rewriting needs weak Muller components, got {0}")]
    UnsupportedAcceptance(&'static str),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

pub fn pair_name(p: &str, r: &str) -> String {
    format!("({p},{r})")
}

fn non_sinks(a: &Automaton) -> Vec<StateId> {
    (0..a.num_states()).filter(|&q| !is_sink_name(a.state_name(q))).collect()
}

fn check_sinks(a: &Automaton) -> Result<(), ProductError> {
    for q in 0..a.num_states() {
        if is_sink_name(a.state_name(q)) && !a.is_absorbing(q) {
            return Err(ProductError::NonAbsorbingSink(a.state_name(q).to_string()));
        }
    }
    Ok(())
}

/// Name of the product state reached when the components sit in `p` and
/// `r`. A sink of the left component takes priority.
fn target_name(a: &Automaton, b: &Automaton, p: StateId, r: StateId) -> String {
    let (pn, rn) = (a.state_name(p), b.state_name(r));
    if is_sink_name(pn) {
        pn.to_string()
    } else if is_sink_name(rn) {
        rn.to_string()
    } else {
        pair_name(pn, rn)
    }
}

/// Replaces every variable `p` of a component formula by the disjunction of
/// the product states whose `side` coordinate is `p`. Sink variables map to
/// the merged global sink.
pub fn rewrite_formula(a: &Automaton, b: &Automaton, side: Side, f: &Formula<StateId>) -> Formula<String> {
    f.substitute(&mut |&q: &StateId| {
        let (own, other) = match side {
            Side::Left => (a, b),
            Side::Right => (b, a),
        };
        let name = own.state_name(q);
        if is_sink_name(name) {
            return Formula::var(name.to_string());
        }
        Formula::or(non_sinks(other).into_iter().map(|o| {
            let on = other.state_name(o);
            Formula::var(match side {
                Side::Left => pair_name(name, on),
                Side::Right => pair_name(on, name),
            })
        }))
    })
}

fn component_formula(a: &Automaton) -> Result<Formula<StateId>, ProductError> {
    match a.acceptance() {
        Acceptance::WeakMuller(c) => Ok(c.to_formula(a.num_states())),
        other => Err(ProductError::UnsupportedAcceptance(other.kind())),
    }
}

/// Synchronous product of two deterministic automata over the same alphabet.
///
/// States are all pairs of non-sink states plus one global sink per sink
/// name occurring in either component. With `rewrite` the acceptance is the
/// conjunction of both component conditions, rewritten onto product states;
/// without it the product is a fragment with the trivial safety condition.
pub fn product(a: &Automaton, b: &Automaton, rewrite: bool) -> Result<Automaton, ProductError> {
    if a.alphabet() != b.alphabet() {
        return Err(ProductError::AlphabetMismatch);
    }
    a.require_deterministic()?;
    b.require_deterministic()?;
    check_sinks(a)?;
    check_sinks(b)?;
    let mut builder = AutomatonBuilder::new(a.alphabet().to_vec());
    let (na, nb) = (non_sinks(a), non_sinks(b));
    for &p in &na {
        for &r in &nb {
            builder.state(pair_name(a.state_name(p), b.state_name(r)));
        }
    }
    for c in [a, b] {
        for q in 0..c.num_states() {
            if is_sink_name(c.state_name(q)) {
                let s = builder.state(c.state_name(q));
                for l in 0..c.num_letters() {
                    builder.edge(s, l, s);
                }
            }
        }
    }
    for &p in &na {
        for &r in &nb {
            let src = builder.state(pair_name(a.state_name(p), b.state_name(r)));
            for l in 0..a.num_letters() {
                let dst = builder.state(target_name(a, b, a.next(p, l), b.next(r, l)));
                builder.edge(src, l, dst);
            }
        }
    }
    let initial = builder.state(target_name(a, b, a.initial(), b.initial()));
    let n = builder.num_states();
    let acceptance = if rewrite {
        let fa = rewrite_formula(a, b, Side::Left, &component_formula(a)?);
        let fb = rewrite_formula(a, b, Side::Right, &component_formula(b)?);
        let f = Formula::and([fa, fb]).resolve(|s| builder.lookup(s)).map_err(AutomatonError::from)?;
        Acceptance::WeakMuller(WeakMullerCondition::EmersonLei(f))
    } else {
        Acceptance::Safety(StateSet::full(n))
    };
    Ok(builder.build(initial, acceptance)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Letter;

    fn chain(names: &[&str], acc: Acceptance) -> Automaton {
        let k = names.len();
        Automaton::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![Letter::plain("a"), Letter::plain("b")],
            0,
            (0..k).flat_map(|q| [(q, 0, (q + 1) % k), (q, 1, q)]),
            acc,
        )
        .unwrap()
    }

    #[test]
    fn sizes_multiply_without_sinks() {
        let a = chain(&["p", "p2"], Acceptance::Safety(StateSet::full(2)));
        let b = chain(&["r0", "r1", "r2"], Acceptance::Safety(StateSet::full(3)));
        assert_eq!(product(&a, &b, false).unwrap().num_states(), 6);
    }

    #[test]
    fn variable_becomes_disjunction_over_other_side() {
        let a = chain(&["p", "p2"], Acceptance::Safety(StateSet::full(2)));
        let b = chain(&["r0", "r1", "r2"], Acceptance::Safety(StateSet::full(3)));
        let f = rewrite_formula(&a, &b, Side::Left, &Formula::var(0));
        assert_eq!(f.to_string(), "\"(p,r0)\" | \"(p,r1)\" | \"(p,r2)\"");
    }

    #[test]
    fn shared_sinks_merge() {
        let names = ["s", "q_rej"];
        let a = Automaton::new(
            names.iter().map(|s| s.to_string()).collect(),
            vec![Letter::plain("a"), Letter::plain("b")],
            0,
            [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
            Acceptance::Safety(StateSet::full(2)),
        )
        .unwrap();
        let p = product(&a, &a, false).unwrap();
        assert_eq!(p.num_states(), 2);
        assert!(p.state_id("q_rej").is_some());
    }

    #[test]
    fn non_absorbing_sink_is_an_error() {
        let a = chain(&["q_acc", "x"], Acceptance::Safety(StateSet::full(2)));
        assert_eq!(product(&a, &a, false).unwrap_err(), ProductError::NonAbsorbingSink("q_acc".into()));
    }
}
