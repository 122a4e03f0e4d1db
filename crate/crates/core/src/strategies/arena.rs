use crate::automaton::StateId;
use crate::engine::{queue_code, ArenaNode, Player, InputStrategy, OutputStrategy, PlayView, SolvedDelayGame, StrategyError};

/// State of the arena's automaton after the answered part of the play.
fn arena_state(game: &SolvedDelayGame, view: &PlayView) -> StateId {
    let a = game.arena.automaton();
    let io = game.arena.io();
    view.outputs
        .iter()
        .enumerate()
        .fold(a.initial(), |q, (i, &y)| a.next(q, io.letter(view.inputs[i], y)))
}

fn lookup(game: &SolvedDelayGame, view: &PlayView, state: StateId) -> Result<usize, StrategyError> {
    let pending = view.pending();
    let node = ArenaNode { state, len: pending.len(), code: queue_code(pending, game.arena.io().num_inputs()) };
    game.arena
        .node_id(&node)
        .ok_or_else(|| StrategyError::Other(format!("position {node:?} is not in the arena")))
}

/// Replays Player O's positional strategy from a solved arena. At nodes
/// Player O does not win it plays output 0.
pub struct ArenaOutput<'a> {
    game: &'a SolvedDelayGame,
}

impl<'a> ArenaOutput<'a> {
    pub fn new(game: &'a SolvedDelayGame) -> Self {
        ArenaOutput { game }
    }
}

impl OutputStrategy for ArenaOutput<'_> {
    fn name(&self) -> String {
        format!("arena-o(k={})", self.game.arena.spec().lookahead())
    }

    fn next_output(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        let v = lookup(self.game, view, arena_state(self.game, view))?;
        Ok(self.game.solution.choice(v).filter(|_| self.game.solution.winner_at(v) == Player::O).unwrap_or(0))
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        Some(vec![arena_state(self.game, view) as u64])
    }
}

/// Replays Player I's positional strategy from a solved arena. At nodes
/// Player I does not win it plays input 0.
pub struct ArenaInput<'a> {
    game: &'a SolvedDelayGame,
}

impl<'a> ArenaInput<'a> {
    pub fn new(game: &'a SolvedDelayGame) -> Self {
        ArenaInput { game }
    }
}

impl InputStrategy for ArenaInput<'_> {
    fn name(&self) -> String {
        format!("arena-i(k={})", self.game.arena.spec().lookahead())
    }

    fn next_input(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        let v = lookup(self.game, view, arena_state(self.game, view))?;
        Ok(self.game.solution.choice(v).filter(|_| self.game.solution.winner_at(v) == Player::I).unwrap_or(0))
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        Some(vec![arena_state(self.game, view) as u64])
    }
}
