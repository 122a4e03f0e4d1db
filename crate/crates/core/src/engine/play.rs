//! Round-by-round simulation of a delay game between two strategies.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::automaton::{Automaton, AutomatonError, LetterId, StateId};
use crate::lasso::{lasso_accepts, Lasso};

use super::arena::{DelaySpec, IoAlphabet};
use super::EngineError;

/// What a strategy sees when it is asked to move.
#[derive(Debug, Clone, Copy)]
pub struct PlayView<'a> {
    pub round: usize,
    pub lookahead: usize,
    /// Input tokens α(0), α(1), … emitted so far.
    pub inputs: &'a [usize],
    /// Output tokens β(0), β(1), … emitted so far.
    pub outputs: &'a [usize],
    pub io: &'a IoAlphabet,
}

impl PlayView<'_> {
    /// Inputs not yet answered by Player O, oldest first.
    pub fn pending(&self) -> &[usize] {
        &self.inputs[self.outputs.len()..]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("needs lookahead {needed}, has {available}")]
    InsufficientLookahead { needed: usize, available: usize },
    #[error("no bad pair in the buffered input")]
    NoBadPair,
    #[error("{0}")]
    Other(String),
}

/// A strategy for Player I.
///
/// [`memory_key`](InputStrategy::memory_key) summarizes everything the
/// strategy's future moves depend on besides the pending inputs, evaluated
/// on the current view. Strategies that cannot give such a summary return
/// `None`, which keeps the simulation from closing a lasso at that point.
pub trait InputStrategy {
    fn name(&self) -> String;
    fn next_input(&mut self, view: &PlayView) -> Result<usize, StrategyError>;
    fn memory_key(&self, _view: &PlayView) -> Option<Vec<u64>> {
        None
    }
}

/// A strategy for Player O; see [`InputStrategy`] for the memory contract.
pub trait OutputStrategy {
    fn name(&self) -> String;
    fn next_output(&mut self, view: &PlayView) -> Result<usize, StrategyError>;
    fn memory_key(&self, _view: &PlayView) -> Option<Vec<u64>> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
    Unresolved,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "ACCEPT",
            Verdict::Reject => "REJECT",
            Verdict::Unresolved => "UNRESOLVED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayTranscript {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    /// The outcome letters (α(i), β(i)) for the rounds played.
    pub letters: Vec<LetterId>,
    pub rounds: usize,
    /// The ultimately periodic outcome, when a configuration repeated.
    pub lasso: Option<Lasso>,
    pub verdict: Verdict,
}

#[derive(Debug, Error)]
pub enum PlayError {
    #[error("strategy `{strategy}` played token {token} in round {round}, but only {size} exist")]
    OutOfAlphabet { strategy: String, round: usize, token: usize, size: usize },
    #[error("strategy `{strategy}` failed in round {round}: {source}")]
    Strategy {
        strategy: String,
        round: usize,
        #[source]
        source: StrategyError,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

type Config = (StateId, Vec<usize>, Vec<u64>, Vec<u64>);

/// Plays at most `round_budget` rounds. Whenever both strategies report a
/// memory key, the configuration (automaton state, pending inputs, both
/// keys) at the start of a round is recorded; a repeat closes the lasso and
/// yields the exact verdict.
pub fn simulate_play(
    a: &Automaton,
    k: usize,
    player_i: &mut dyn InputStrategy,
    player_o: &mut dyn OutputStrategy,
    round_budget: usize,
) -> Result<PlayTranscript, PlayError> {
    if !a.is_deterministic() {
        return Err(EngineError::NonDeterministic.into());
    }
    let spec = DelaySpec::constant(k)?;
    let io = IoAlphabet::of(a)?;
    let mut inputs = Vec::new();
    let mut outputs = Vec::new();
    let mut letters = Vec::new();
    let mut state = a.initial();
    let mut seen: HashMap<Config, usize> = HashMap::new();
    for round in 0..=round_budget {
        if round > 0 {
            let view = PlayView { round, lookahead: k, inputs: &inputs, outputs: &outputs, io: &io };
            if let (Some(mi), Some(mo)) = (player_i.memory_key(&view), player_o.memory_key(&view)) {
                let key = (state, inputs[outputs.len()..].to_vec(), mi, mo);
                if let Some(&start) = seen.get(&key) {
                    let lasso = Lasso::new(letters[..start].to_vec(), letters[start..].to_vec())
                        .expect("a repeat spans at least one round");
                    let verdict = if lasso_accepts(a, &lasso)? { Verdict::Accept } else { Verdict::Reject };
                    return Ok(PlayTranscript { inputs, outputs, letters, rounds: round, lasso: Some(lasso), verdict });
                }
                seen.insert(key, round);
            }
        }
        if round == round_budget {
            break;
        }
        for _ in 0..spec.letters_in_round(round) {
            let view = PlayView { round, lookahead: k, inputs: &inputs, outputs: &outputs, io: &io };
            let x = player_i.next_input(&view).map_err(|source| PlayError::Strategy {
                strategy: player_i.name(),
                round,
                source,
            })?;
            if x >= io.num_inputs() {
                return Err(PlayError::OutOfAlphabet { strategy: player_i.name(), round, token: x, size: io.num_inputs() });
            }
            inputs.push(x);
        }
        let view = PlayView { round, lookahead: k, inputs: &inputs, outputs: &outputs, io: &io };
        let y = player_o.next_output(&view).map_err(|source| PlayError::Strategy {
            strategy: player_o.name(),
            round,
            source,
        })?;
        if y >= io.num_outputs() {
            return Err(PlayError::OutOfAlphabet { strategy: player_o.name(), round, token: y, size: io.num_outputs() });
        }
        outputs.push(y);
        let l = io.letter(inputs[round], y);
        letters.push(l);
        state = a.next(state, l);
    }
    Ok(PlayTranscript { inputs, outputs, letters, rounds: round_budget, lasso: None, verdict: Verdict::Unresolved })
}
