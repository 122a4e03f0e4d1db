use crate::engine::{OutputStrategy, PlayView, StrategyError};

use super::echo;

/// Copies `α(i+n)` into `β(i)` for `i < n`, then plays output token 0.
#[derive(Debug, Clone)]
pub struct OCopyCheck {
    n: usize,
}

impl OCopyCheck {
    pub fn new(n: usize) -> Self {
        OCopyCheck { n }
    }
}

impl OutputStrategy for OCopyCheck {
    fn name(&self) -> String {
        format!("o-copycheck({})", self.n)
    }

    fn next_output(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        let i = view.outputs.len();
        if i >= self.n {
            return Ok(0);
        }
        match view.inputs.get(i + self.n) {
            Some(&x) => echo(view, x),
            None => Err(StrategyError::InsufficientLookahead { needed: self.n + 1, available: view.lookahead }),
        }
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        Some(vec![view.outputs.len().min(self.n) as u64])
    }
}
