//! Delay games with constant lookahead.
//!
//! A game is played on the language of a deterministic automaton over a
//! product alphabet Σ_I × Σ_O. Player I first picks k input letters, then
//! both players alternate: Player O answers the oldest unanswered input
//! with an output letter and Player I appends one more input. Making the
//! pending inputs explicit turns this into a finite [`Arena`] with a Büchi
//! objective for Player O.

mod arena;
mod delay;
mod game;
mod play;

pub use arena::{
    build_arena, node_bound, prepare, queue_code, Arena, ArenaNode, DelaySpec, IoAlphabet, DEFAULT_NODE_BUDGET,
};
pub use delay::{minimal_lookahead, solve_delay, solve_delay_game, LookaheadReport, LookaheadStep, SolvedDelayGame};
pub use game::{solve_buchi, BuchiGame, BuchiSolution, Player};
pub use play::{
    simulate_play, InputStrategy, OutputStrategy, PlayError, PlayTranscript, PlayView, StrategyError, Verdict,
};

use thiserror::Error;

use crate::automaton::AutomatonError;
use crate::translate::TranslateError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("lookahead must be at least 1")]
    ZeroLookahead,
    #[error("delay games need a deterministic automaton")]
    NonDeterministic,
    #[error("delay games need a product alphabet of (input, output) pairs")]
    NotProductAlphabet,
    #[error("product alphabet lacks the letter `{0}`")]
    MissingLetter(String),
    #[error("parity color {0} outside {{1, 2}}")]
    UnsupportedColor(u32),
    #[error("arena exceeds the node budget of {budget} (bound for this lookahead: {bound})")]
    Budget { budget: usize, bound: u128 },
    #[error("malformed arena: {0}")]
    MalformedArena(String),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}
