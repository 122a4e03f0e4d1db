use crate::automaton::Automaton;

use super::arena::{build_prepared, prepare, Arena, DelaySpec};
use super::game::{solve_buchi, BuchiSolution, Player};
use super::EngineError;

/// A solved delay game: the arena together with its solution.
#[derive(Debug, Clone)]
pub struct SolvedDelayGame {
    pub arena: Arena,
    pub solution: BuchiSolution,
}

impl SolvedDelayGame {
    pub fn winner(&self) -> Player {
        self.solution.winner()
    }
}

pub fn solve_delay_game(a: &Automaton, k: usize, budget: usize) -> Result<SolvedDelayGame, EngineError> {
    let (p, io) = prepare(a)?;
    let arena = build_prepared(p, io, DelaySpec::constant(k)?, budget)?;
    let solution = solve_buchi(arena.game());
    Ok(SolvedDelayGame { arena, solution })
}

/// Winner of the delay game on `L(a)` where Player O has lookahead `k`.
pub fn solve_delay(a: &Automaton, k: usize, budget: usize) -> Result<Player, EngineError> {
    Ok(solve_delay_game(a, k, budget)?.winner())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookaheadStep {
    pub k: usize,
    pub winner: Player,
    pub nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookaheadReport {
    pub k_max: usize,
    /// Every decided lookahead, in increasing order.
    pub steps: Vec<LookaheadStep>,
    /// Smallest k for which Player O wins, if one was found.
    pub minimal: Option<usize>,
    /// The error that stopped the search before `k_max`, if any.
    pub stopped: Option<EngineError>,
}

impl LookaheadReport {
    pub fn largest_decided(&self) -> Option<usize> {
        self.steps.last().map(|s| s.k)
    }
}

/// Searches for the smallest lookahead in `1..=k_max` with which Player O
/// wins, trying each k in turn. Running out of budget ends the search with
/// a partial report; other errors are returned directly.
pub fn minimal_lookahead(a: &Automaton, k_max: usize, budget: usize) -> Result<LookaheadReport, EngineError> {
    let (p, io) = prepare(a)?;
    let mut report = LookaheadReport { k_max, steps: Vec::new(), minimal: None, stopped: None };
    for k in 1..=k_max {
        let arena = match build_prepared(p.clone(), io.clone(), DelaySpec::constant(k)?, budget) {
            Ok(arena) => arena,
            Err(e @ EngineError::Budget { .. }) => {
                report.stopped = Some(e);
                break;
            }
            Err(e) => return Err(e),
        };
        let winner = solve_buchi(arena.game()).winner();
        report.steps.push(LookaheadStep { k, winner, nodes: arena.num_nodes() });
        if winner == Player::O {
            report.minimal = Some(k);
            break;
        }
    }
    Ok(report)
}
