use crate::automaton::{StateId, StateSet};
use crate::formula::Formula;

/// Representation of a weak Muller family 𝓕 ⊆ 2^Q.
#[derive(Debug, Clone, PartialEq)]
pub enum WeakMullerCondition {
    /// The family listed set by set.
    Explicit(Vec<StateSet>),
    /// The family of models of a formula over state variables.
    EmersonLei(Formula<StateId>),
}

impl WeakMullerCondition {
    pub fn contains(&self, occ: &StateSet) -> bool {
        match self {
            WeakMullerCondition::Explicit(sets) => sets.iter().any(|s| s == occ),
            WeakMullerCondition::EmersonLei(f) => f.eval_set(occ),
        }
    }

    /// An Emerson-Lei formula with the same models over `num_states` states.
    pub fn to_formula(&self, num_states: usize) -> Formula<StateId> {
        match self {
            WeakMullerCondition::EmersonLei(f) => f.clone(),
            WeakMullerCondition::Explicit(sets) => Formula::or(sets.iter().map(|s| {
                Formula::and((0..num_states).map(|q| {
                    if s.contains(q) {
                        Formula::var(q)
                    } else {
                        Formula::not(Formula::var(q))
                    }
                }))
            })),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Acceptance {
    /// Every visited state lies in F.
    Safety(StateSet),
    /// Some visited state lies in F.
    Reachability(StateSet),
    /// The maximal color seen infinitely often is even.
    Parity(Vec<u32>),
    /// The occurrence set belongs to 𝓕.
    WeakMuller(WeakMullerCondition),
}

impl Acceptance {
    pub fn kind(&self) -> &'static str {
        match self {
            Acceptance::Safety(_) => "safety",
            Acceptance::Reachability(_) => "reachability",
            Acceptance::Parity(_) => "parity",
            Acceptance::WeakMuller(_) => "weak-muller",
        }
    }

    /// Verdict for conditions that only depend on the occurrence set.
    /// `None` for parity.
    pub fn accepts_occurrence(&self, occ: &StateSet) -> Option<bool> {
        match self {
            Acceptance::Safety(f) => Some(occ.is_subset(f)),
            Acceptance::Reachability(f) => Some(occ.intersects(f)),
            Acceptance::WeakMuller(c) => Some(c.contains(occ)),
            Acceptance::Parity(_) => None,
        }
    }

    /// Verdict for a run with occurrence set `occ` and infinity set `inf`.
    pub fn accepts_run(&self, occ: &StateSet, inf: &StateSet) -> bool {
        match self {
            Acceptance::Parity(colors) => inf.iter().map(|q| colors[q]).max().is_some_and(|c| c % 2 == 0),
            other => other.accepts_occurrence(occ).unwrap(),
        }
    }
}
