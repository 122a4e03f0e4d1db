//! Ultimately periodic words `u·v^ω` and exact membership tests.

use std::collections::HashMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use thiserror::Error;

use crate::acceptance::Acceptance;
use crate::automaton::{Automaton, AutomatonError, LetterId, StateId, StateSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    spoke: Vec<LetterId>,
    cycle: Vec<LetterId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LassoError {
    #[error("lasso cycle must be non-empty")]
    EmptyCycle,
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

impl Lasso {
    pub fn new(spoke: Vec<LetterId>, cycle: Vec<LetterId>) -> Result<Self, LassoError> {
        if cycle.is_empty() {
            return Err(LassoError::EmptyCycle);
        }
        Ok(Lasso { spoke, cycle })
    }

    /// Parses spoke and cycle with [`Automaton::parse_word`].
    pub fn parse(a: &Automaton, spoke: &str, cycle: &str) -> Result<Self, LassoError> {
        Lasso::new(a.parse_word(spoke)?, a.parse_word(cycle)?)
    }

    pub fn spoke(&self) -> &[LetterId] {
        &self.spoke
    }

    pub fn cycle(&self) -> &[LetterId] {
        &self.cycle
    }

    /// Number of distinct positions of the lasso graph.
    pub fn positions(&self) -> usize {
        self.spoke.len() + self.cycle.len()
    }

    pub fn letter_at(&self, pos: usize) -> LetterId {
        if pos < self.spoke.len() {
            self.spoke[pos]
        } else {
            self.cycle[pos - self.spoke.len()]
        }
    }

    pub fn next_position(&self, pos: usize) -> usize {
        if pos + 1 < self.positions() {
            pos + 1
        } else {
            self.spoke.len()
        }
    }

    /// The i-th letter of the infinite word.
    pub fn letter(&self, i: usize) -> LetterId {
        if i < self.spoke.len() {
            self.spoke[i]
        } else {
            self.cycle[(i - self.spoke.len()) % self.cycle.len()]
        }
    }

    /// The first `len` letters of the infinite word.
    pub fn prefix(&self, len: usize) -> Vec<LetterId> {
        (0..len).map(|i| self.letter(i)).collect()
    }

    /// The same word with one traversal of the cycle moved into the spoke.
    pub fn unrolled(&self) -> Lasso {
        let mut spoke = self.spoke.clone();
        spoke.extend_from_slice(&self.cycle);
        Lasso { spoke, cycle: self.cycle.clone() }
    }

    fn check_letters(&self, a: &Automaton) -> Result<(), AutomatonError> {
        match self.spoke.iter().chain(&self.cycle).find(|&&l| l >= a.num_letters()) {
            Some(&l) => Err(AutomatonError::LetterOutOfRange(l)),
            None => Ok(()),
        }
    }
}

/// Occurrence and infinity sets of the unique run of a deterministic
/// automaton on a lasso.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetLassoRun {
    pub occurrence: StateSet,
    pub infinity: StateSet,
}

/// Runs the spoke, then traverses the cycle until the state at the start of
/// a traversal repeats. At most |Q| traversals are needed; from then on the
/// occurrence set is stable and the infinity set is what the repeating
/// traversals visit.
pub fn det_lasso_run(a: &Automaton, lasso: &Lasso) -> Result<DetLassoRun, AutomatonError> {
    a.require_deterministic()?;
    lasso.check_letters(a)?;
    let width = a.num_states();
    let (mut q, mut occ) = a.run_det(lasso.spoke())?;
    let mut first_seen: HashMap<StateId, usize> = HashMap::new();
    let mut traversals: Vec<StateSet> = Vec::new();
    loop {
        if let Some(&t0) = first_seen.get(&q) {
            let mut inf = StateSet::empty(width);
            for s in &traversals[t0..] {
                inf.union_with(s);
            }
            return Ok(DetLassoRun { occurrence: occ, infinity: inf });
        }
        first_seen.insert(q, traversals.len());
        let mut seen = StateSet::empty(width);
        for &l in lasso.cycle() {
            q = a.next(q, l);
            seen.insert(q);
        }
        occ.union_with(&seen);
        traversals.push(seen);
    }
}

/// Exact decision whether `u·v^ω ∈ L(a)`.
///
/// Deterministic automata take the direct route of [`det_lasso_run`];
/// everything else goes through [`lasso_accepts_graph`].
pub fn lasso_accepts(a: &Automaton, lasso: &Lasso) -> Result<bool, AutomatonError> {
    if a.is_deterministic() {
        let run = det_lasso_run(a, lasso)?;
        Ok(a.acceptance().accepts_run(&run.occurrence, &run.infinity))
    } else {
        lasso_accepts_graph(a, lasso)
    }
}

fn nontrivial<N>(scc: &[NodeIndex], g: &DiGraph<N, ()>) -> bool {
    scc.len() > 1 || g.contains_edge(scc[0], scc[0])
}

/// Membership through the product of the lasso graph with the automaton.
/// Valid for any automaton.
///
/// For occurrence-based conditions the nodes are (position, state,
/// occurrence set); since occurrence sets only grow, every cycle has a
/// constant occurrence set, so the word is accepted iff some reachable
/// non-trivial strongly connected component carries an accepting set. For
/// parity the nodes are (position, state) and the word is accepted iff for
/// some even color c a reachable non-trivial component of the subgraph of
/// colors ≤ c contains color c.
pub fn lasso_accepts_graph(a: &Automaton, lasso: &Lasso) -> Result<bool, AutomatonError> {
    lasso.check_letters(a)?;
    let width = a.num_states();
    match a.acceptance() {
        Acceptance::Parity(colors) => {
            let mut index: HashMap<(usize, StateId), NodeIndex> = HashMap::new();
            let mut g: DiGraph<(), ()> = DiGraph::new();
            let mut nodes = Vec::new();
            let start = (0, a.initial());
            index.insert(start, g.add_node(()));
            nodes.push(start);
            let mut i = 0;
            while i < nodes.len() {
                let (pos, q) = nodes[i];
                let src = index[&(pos, q)];
                let np = lasso.next_position(pos);
                for &r in a.successors(q, lasso.letter_at(pos)) {
                    let key = (np, r);
                    let dst = *index.entry(key).or_insert_with(|| {
                        nodes.push(key);
                        g.add_node(())
                    });
                    g.add_edge(src, dst, ());
                }
                i += 1;
            }
            let mut even: Vec<u32> = colors.iter().copied().filter(|c| c % 2 == 0).collect();
            even.sort_unstable();
            even.dedup();
            for c in even {
                let sub = g.filter_map(
                    |ni, _| (colors[nodes[ni.index()].1] <= c).then_some(ni),
                    |_, _| Some(()),
                );
                for scc in tarjan_scc(&sub) {
                    if nontrivial(&scc, &sub) && scc.iter().any(|&n| colors[nodes[sub[n].index()].1] == c) {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
        acc => {
            let mut index: HashMap<(usize, StateId, StateSet), NodeIndex> = HashMap::new();
            let mut g: DiGraph<(), ()> = DiGraph::new();
            let mut nodes: Vec<(usize, StateId, StateSet)> = Vec::new();
            let start = (0, a.initial(), StateSet::singleton(width, a.initial()));
            index.insert(start.clone(), g.add_node(()));
            nodes.push(start);
            let mut i = 0;
            while i < nodes.len() {
                let (pos, q, occ) = nodes[i].clone();
                let src = NodeIndex::new(i);
                let np = lasso.next_position(pos);
                for &r in a.successors(q, lasso.letter_at(pos)) {
                    let key = (np, r, occ.with(r));
                    let dst = match index.get(&key) {
                        Some(&d) => d,
                        None => {
                            let d = g.add_node(());
                            index.insert(key.clone(), d);
                            nodes.push(key);
                            d
                        }
                    };
                    g.add_edge(src, dst, ());
                }
                i += 1;
            }
            for scc in tarjan_scc(&g) {
                if nontrivial(&scc, &g) && acc.accepts_occurrence(&nodes[scc[0].index()].2).unwrap() {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}
