//! Weak Muller to parity translation by tracking occurrence sets.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::acceptance::Acceptance;
use crate::automaton::{Automaton, AutomatonError, StateId, StateSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("translation needs weak Muller acceptance, got {0}")]
    NotWeakMuller(&'static str),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// A state of the translated automaton: a source state together with the
/// occurrence set accumulated on the way to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrackedState {
    pub base: StateId,
    pub occ: StateSet,
}

#[derive(Debug, Clone)]
pub struct Translation {
    pub automaton: Automaton,
    /// `tracked[q]` is the pair behind state `q` of `automaton`.
    pub tracked: Vec<TrackedState>,
}

fn tracked_name(src: &Automaton, t: &TrackedState) -> String {
    format!("({},{{{}}})", src.state_name(t.base), src.state_set_names(&t.occ).join(","))
}

/// Builds the parity automaton over the pairs (q, O) reachable from
/// (q_I, {q_I}). A pair is colored 2 if O satisfies the condition and 1
/// otherwise. Non-deterministic sources keep one tracked successor per
/// source transition.
pub fn weak_muller_to_parity(a: &Automaton) -> Result<Translation, TranslateError> {
    let cond = match a.acceptance() {
        Acceptance::WeakMuller(c) => c,
        other => return Err(TranslateError::NotWeakMuller(other.kind())),
    };
    Ok(track(a, |occ| cond.contains(occ)))
}

fn track(a: &Automaton, accepting: impl Fn(&StateSet) -> bool) -> Translation {
    let width = a.num_states();
    let start = TrackedState { base: a.initial(), occ: StateSet::singleton(width, a.initial()) };
    let mut index: HashMap<TrackedState, StateId> = HashMap::new();
    let mut tracked = vec![start.clone()];
    index.insert(start, 0);
    let mut transitions = Vec::new();
    let mut i = 0;
    while i < tracked.len() {
        let t = tracked[i].clone();
        for l in 0..a.num_letters() {
            for &r in a.successors(t.base, l) {
                let next = TrackedState { base: r, occ: t.occ.with(r) };
                let j = *index.entry(next.clone()).or_insert_with(|| {
                    tracked.push(next);
                    tracked.len() - 1
                });
                transitions.push((i, l, j));
            }
        }
        i += 1;
    }
    let colors = tracked.iter().map(|t| if accepting(&t.occ) { 2 } else { 1 }).collect();
    let names = tracked.iter().map(|t| tracked_name(a, t)).collect();
    let automaton = Automaton::new(names, a.alphabet().to_vec(), 0, transitions, Acceptance::Parity(colors))
        .expect("tracked automaton is well formed by construction");
    Translation { automaton, tracked }
}

/// Brings an automaton into parity form: weak Muller, safety and
/// reachability conditions are tracked through occurrence sets (colors 1
/// and 2), parity automata are returned unchanged.
pub fn to_buchi_parity(a: &Automaton) -> Result<Automaton, TranslateError> {
    match a.acceptance() {
        Acceptance::Parity(_) => Ok(a.clone()),
        Acceptance::WeakMuller(_) => Ok(weak_muller_to_parity(a)?.automaton),
        acc => Ok(track(a, |occ| acc.accepts_occurrence(occ).unwrap()).automaton),
    }
}

/// Shape of a translated automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorProfile {
    pub states: usize,
    /// Number of states per color.
    pub colors: BTreeMap<u32, usize>,
    /// Largest number of strict occurrence-set growths along any path.
    pub max_growth: usize,
}

pub fn color_profile(t: &Translation) -> ColorProfile {
    let mut colors = BTreeMap::new();
    if let Acceptance::Parity(cs) = t.automaton.acceptance() {
        for &c in cs {
            *colors.entry(c).or_insert(0) += 1;
        }
    }
    // Along every path |O| only grows, by at most one per step, so the
    // number of strict growths from the start is |O| − 1.
    let max_growth = t.tracked.iter().map(|s| s.occ.len() - 1).max().unwrap_or(0);
    ColorProfile { states: t.automaton.num_states(), colors, max_growth }
}
