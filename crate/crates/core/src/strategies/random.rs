use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{InputStrategy, OutputStrategy, PlayView, StrategyError};

/// Pseudo-random letters forming an eventually periodic sequence.
#[derive(Debug, Clone)]
struct Periodic {
    seed: u64,
    prefix_len: usize,
    cycle_len: usize,
    letters: Vec<usize>,
}

impl Periodic {
    fn new(seed: u64, prefix_len: usize, cycle_len: usize) -> Self {
        Periodic { seed, prefix_len, cycle_len: cycle_len.max(1), letters: Vec::new() }
    }

    fn at(&mut self, pos: usize, size: usize) -> usize {
        if self.letters.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            self.letters = (0..self.prefix_len + self.cycle_len).map(|_| rng.gen_range(0..size)).collect();
        }
        self.letters[self.index(pos)]
    }

    fn index(&self, pos: usize) -> usize {
        if pos < self.prefix_len {
            pos
        } else {
            self.prefix_len + (pos - self.prefix_len) % self.cycle_len
        }
    }

    fn key(&self, pos: usize) -> Vec<u64> {
        vec![self.index(pos) as u64]
    }
}

/// Random inputs: a seeded prefix followed by a seeded cycle.
#[derive(Debug, Clone)]
pub struct RandomInput(Periodic);

impl RandomInput {
    pub fn new(seed: u64, prefix_len: usize, cycle_len: usize) -> Self {
        RandomInput(Periodic::new(seed, prefix_len, cycle_len))
    }

    /// Prefix and cycle lengths drawn from the seed as well (each up to `max_len`).
    pub fn from_seed(seed: u64, max_len: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        RandomInput::new(seed, rng.gen_range(0..=max_len), rng.gen_range(1..=max_len.max(1)))
    }
}

impl InputStrategy for RandomInput {
    fn name(&self) -> String {
        format!("random-input(seed={})", self.0.seed)
    }

    fn next_input(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        Ok(self.0.at(view.inputs.len(), view.io.num_inputs()))
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        Some(self.0.key(view.inputs.len()))
    }
}

/// Random outputs: a seeded prefix followed by a seeded cycle.
#[derive(Debug, Clone)]
pub struct RandomOutput(Periodic);

impl RandomOutput {
    pub fn new(seed: u64, prefix_len: usize, cycle_len: usize) -> Self {
        RandomOutput(Periodic::new(seed, prefix_len, cycle_len))
    }

    pub fn from_seed(seed: u64, max_len: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        RandomOutput::new(seed, rng.gen_range(0..=max_len), rng.gen_range(1..=max_len.max(1)))
    }
}

impl OutputStrategy for RandomOutput {
    fn name(&self) -> String {
        format!("random-output(seed={})", self.0.seed)
    }

    fn next_output(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        Ok(self.0.at(view.outputs.len(), view.io.num_outputs()))
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        Some(self.0.key(view.outputs.len()))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantInput(pub usize);

impl InputStrategy for ConstantInput {
    fn name(&self) -> String {
        format!("constant-input({})", self.0)
    }

    fn next_input(&mut self, _view: &PlayView) -> Result<usize, StrategyError> {
        Ok(self.0)
    }

    fn memory_key(&self, _view: &PlayView) -> Option<Vec<u64>> {
        Some(Vec::new())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantOutput(pub usize);

impl OutputStrategy for ConstantOutput {
    fn name(&self) -> String {
        format!("constant-output({})", self.0)
    }

    fn next_output(&mut self, _view: &PlayView) -> Result<usize, StrategyError> {
        Ok(self.0)
    }

    fn memory_key(&self, _view: &PlayView) -> Option<Vec<u64>> {
        Some(Vec::new())
    }
}
