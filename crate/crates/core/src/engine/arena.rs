//! The finite arena of a delay game with constant lookahead.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::acceptance::Acceptance;
use crate::automaton::{Automaton, Letter, LetterId, StateId};
use crate::translate::to_buchi_parity;

use super::game::{BuchiGame, Player};
use super::EngineError;

/// Constant delay: Player I moves `k` letters ahead of Player O.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DelaySpec {
    k: usize,
}

impl DelaySpec {
    pub fn constant(k: usize) -> Result<Self, EngineError> {
        if k == 0 {
            return Err(EngineError::ZeroLookahead);
        }
        Ok(DelaySpec { k })
    }

    pub fn lookahead(&self) -> usize {
        self.k
    }

    /// Letters Player I contributes in round `i`.
    pub fn letters_in_round(&self, i: usize) -> usize {
        if i == 0 {
            self.k
        } else {
            1
        }
    }
}

/// The input and output tokens of a product alphabet, with every
/// combination present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IoAlphabet {
    inputs: Vec<String>,
    outputs: Vec<String>,
    letters: Vec<LetterId>,
}

impl IoAlphabet {
    pub fn of(a: &Automaton) -> Result<Self, EngineError> {
        let mut inputs: Vec<String> = Vec::new();
        let mut outputs: Vec<String> = Vec::new();
        for l in a.alphabet() {
            let Letter::Pair(i, o) = l else {
                return Err(EngineError::NotProductAlphabet);
            };
            if !inputs.contains(i) {
                inputs.push(i.clone());
            }
            if !outputs.contains(o) {
                outputs.push(o.clone());
            }
        }
        let mut letters = Vec::with_capacity(inputs.len() * outputs.len());
        for i in &inputs {
            for o in &outputs {
                let l = Letter::pair(i.as_str(), o.as_str());
                letters.push(a.letter_id(&l).ok_or_else(|| EngineError::MissingLetter(l.to_string()))?);
            }
        }
        Ok(IoAlphabet { inputs, outputs, letters })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// The automaton letter for input token `x` and output token `y`.
    pub fn letter(&self, x: usize, y: usize) -> LetterId {
        self.letters[x * self.outputs.len() + y]
    }

    pub fn input_index(&self, token: &str) -> Option<usize> {
        self.inputs.iter().position(|t| t == token)
    }

    pub fn output_index(&self, token: &str) -> Option<usize> {
        self.outputs.iter().position(|t| t == token)
    }
}

/// A position of the arena: automaton state and pending inputs.
///
/// The queue is stored oldest first as a base-|Σ_I| number, the oldest
/// letter in the lowest digit. Player I moves while fewer than k letters are
/// pending; with exactly k pending Player O answers the oldest one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArenaNode {
    pub state: StateId,
    pub len: usize,
    pub code: u64,
}

impl ArenaNode {
    pub fn queue(&self, base: usize) -> Vec<usize> {
        let mut c = self.code;
        (0..self.len)
            .map(|_| {
                let x = (c % base as u64) as usize;
                c /= base as u64;
                x
            })
            .collect()
    }
}

/// Encodes a queue, oldest letter first.
pub fn queue_code(queue: &[usize], base: usize) -> u64 {
    queue.iter().rev().fold(0u64, |acc, &x| acc * base as u64 + x as u64)
}

#[derive(Debug, Clone)]
pub struct Arena {
    automaton: Automaton,
    io: IoAlphabet,
    spec: DelaySpec,
    nodes: Vec<ArenaNode>,
    index: HashMap<ArenaNode, u32>,
    game: BuchiGame,
}

/// Default bound on the number of arena nodes.
pub const DEFAULT_NODE_BUDGET: usize = 50_000_000;

/// Brings `a` into the form the arena needs: deterministic, product
/// alphabet, parity colors within {1, 2}. Weak Muller, safety and
/// reachability automata are translated.
pub fn prepare(a: &Automaton) -> Result<(Automaton, IoAlphabet), EngineError> {
    if !a.is_deterministic() {
        return Err(EngineError::NonDeterministic);
    }
    let io = IoAlphabet::of(a)?;
    let p = to_buchi_parity(a)?;
    if let Acceptance::Parity(colors) = p.acceptance() {
        if let Some(&c) = colors.iter().find(|&&c| c != 1 && c != 2) {
            return Err(EngineError::UnsupportedColor(c));
        }
    }
    Ok((p, io))
}

/// Upper bound on the node count: |Q′| · (|Σ_I|^k + … + 1).
pub fn node_bound(states: usize, inputs: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..=k {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(inputs as u128);
    }
    total.saturating_mul(states as u128)
}

pub fn build_arena(a: &Automaton, spec: DelaySpec, budget: usize) -> Result<Arena, EngineError> {
    let (p, io) = prepare(a)?;
    build_prepared(p, io, spec, budget)
}

pub(crate) fn build_prepared(p: Automaton, io: IoAlphabet, spec: DelaySpec, budget: usize) -> Result<Arena, EngineError> {
    let k = spec.k;
    let m_in = io.num_inputs();
    let m_out = io.num_outputs();
    let bound = node_bound(p.num_states(), m_in, k);
    if (m_in as u128).checked_pow(k as u32).is_none_or(|x| x > u64::MAX as u128) {
        return Err(EngineError::Budget { budget, bound });
    }
    let Acceptance::Parity(colors) = p.acceptance() else { unreachable!("prepared automata are parity") };
    let mut nodes = vec![ArenaNode { state: p.initial(), len: 0, code: 0 }];
    let mut index: HashMap<ArenaNode, u32> = HashMap::from([(nodes[0], 0)]);
    let mut offsets = vec![0usize];
    let mut succ: Vec<u32> = Vec::new();
    let mut owner = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let v = nodes[i];
        let moves: Vec<ArenaNode> = if v.len < k {
            let weight = (m_in as u64).pow(v.len as u32);
            (0..m_in)
                .map(|x| ArenaNode { state: v.state, len: v.len + 1, code: v.code + x as u64 * weight })
                .collect()
        } else {
            assert_eq!(v.len, k, "Player O moves with exactly k pending letters");
            let x = (v.code % m_in as u64) as usize;
            (0..m_out)
                .map(|y| ArenaNode { state: p.next(v.state, io.letter(x, y)), len: k - 1, code: v.code / m_in as u64 })
                .collect()
        };
        owner.push(if v.len < k { Player::I } else { Player::O });
        for w in moves {
            let id = match index.get(&w) {
                Some(&id) => id,
                None => {
                    if nodes.len() >= budget {
                        return Err(EngineError::Budget { budget, bound });
                    }
                    let id = nodes.len() as u32;
                    nodes.push(w);
                    index.insert(w, id);
                    id
                }
            };
            succ.push(id);
        }
        offsets.push(succ.len());
        i += 1;
    }
    let mut target = FixedBitSet::with_capacity(nodes.len());
    for (v, node) in nodes.iter().enumerate() {
        if colors[node.state] == 2 {
            target.insert(v);
        }
    }
    let game = BuchiGame::from_csr(owner, target, offsets, succ);
    Ok(Arena { automaton: p, io, spec, nodes, index, game })
}

impl Arena {
    /// The parity automaton the arena is built on.
    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn io(&self) -> &IoAlphabet {
        &self.io
    }

    pub fn spec(&self) -> DelaySpec {
        self.spec
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, v: usize) -> ArenaNode {
        self.nodes[v]
    }

    pub fn node_id(&self, node: &ArenaNode) -> Option<usize> {
        self.index.get(node).map(|&v| v as usize)
    }

    pub fn game(&self) -> &BuchiGame {
        &self.game
    }
}
