//! Scripted strategies for the gadget families, generic random opponents
//! and wrappers that replay solved arena strategies.
//!
//! All strategies are deterministic: their moves are a function of the
//! play so far and of their construction parameters (including seeds).

mod arena;
mod copycheck;
mod pn;
mod random;
mod sumpair;

pub use arena::{ArenaInput, ArenaOutput};
pub use copycheck::OCopyCheck;
pub use pn::{GreedyPnOutput, IPnSpoiler, OPn};
pub use random::{ConstantInput, ConstantOutput, RandomInput, RandomOutput};
pub use sumpair::{ISumPairSpoiler, OSumPair, RandomSumPairInput, RandomSumPairOutput};

use crate::engine::{PlayView, StrategyError};

/// The output token spelled like input token `x`.
pub(crate) fn echo(view: &PlayView, x: usize) -> Result<usize, StrategyError> {
    let t = &view.io.inputs()[x];
    view.io.output_index(t).ok_or_else(|| StrategyError::Other(format!("no output token `{t}`")))
}

pub(crate) fn output_token(view: &PlayView, t: &str) -> Result<usize, StrategyError> {
    view.io.output_index(t).ok_or_else(|| StrategyError::Other(format!("no output token `{t}`")))
}

pub(crate) fn input_token(view: &PlayView, t: &str) -> Result<usize, StrategyError> {
    view.io.input_index(t).ok_or_else(|| StrategyError::Other(format!("no input token `{t}`")))
}
