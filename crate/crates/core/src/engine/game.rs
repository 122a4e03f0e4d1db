//! Two-player game graphs with a Büchi objective for Player O.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::EngineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    I,
    O,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::I => Player::O,
            Player::O => Player::I,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::I => "I",
            Player::O => "O",
        })
    }
}

/// A finite game graph. Node 0 is the initial node; successors of a node
/// are ordered and addressed by their index ("move").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchiGame {
    owner: Vec<Player>,
    target: FixedBitSet,
    offsets: Vec<usize>,
    succ: Vec<u32>,
}

impl BuchiGame {
    /// Checks that every node has a successor and all edges stay in range.
    pub fn new(owner: Vec<Player>, target: FixedBitSet, succ: Vec<Vec<u32>>) -> Result<Self, EngineError> {
        let n = owner.len();
        if n == 0 {
            return Err(EngineError::MalformedArena("no nodes".into()));
        }
        if succ.len() != n || target.len() != n {
            return Err(EngineError::MalformedArena(format!(
                "{n} owners, {} successor lists, {} target bits",
                succ.len(),
                target.len()
            )));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut flat = Vec::new();
        offsets.push(0);
        for (v, s) in succ.iter().enumerate() {
            if s.is_empty() {
                return Err(EngineError::MalformedArena(format!("node {v} has no successor")));
            }
            if let Some(&w) = s.iter().find(|&&w| w as usize >= n) {
                return Err(EngineError::MalformedArena(format!("edge {v} -> {w} leaves the graph")));
            }
            flat.extend_from_slice(s);
            offsets.push(flat.len());
        }
        Ok(BuchiGame { owner, target, offsets, succ: flat })
    }

    pub(crate) fn from_csr(owner: Vec<Player>, target: FixedBitSet, offsets: Vec<usize>, succ: Vec<u32>) -> Self {
        debug_assert_eq!(offsets.len(), owner.len() + 1);
        BuchiGame { owner, target, offsets, succ }
    }

    pub fn num_nodes(&self) -> usize {
        self.owner.len()
    }

    pub fn num_edges(&self) -> usize {
        self.succ.len()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn is_target(&self, v: usize) -> bool {
        self.target.contains(v)
    }

    pub fn successors(&self, v: usize) -> &[u32] {
        &self.succ[self.offsets[v]..self.offsets[v + 1]]
    }

    fn predecessors(&self) -> (Vec<usize>, Vec<u32>) {
        let n = self.num_nodes();
        let mut count = vec![0usize; n + 1];
        for &w in &self.succ {
            count[w as usize + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let mut fill = count.clone();
        let mut pred = vec![0u32; self.succ.len()];
        for v in 0..n {
            for &w in self.successors(v) {
                pred[fill[w as usize]] = v as u32;
                fill[w as usize] += 1;
            }
        }
        (count, pred)
    }
}

/// Winning regions and positional strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuchiSolution {
    winner: Vec<Player>,
    /// For each node owned by the player who wins it: the chosen move.
    strategy: Vec<Option<u32>>,
}

impl BuchiSolution {
    /// Winner from the initial node.
    pub fn winner(&self) -> Player {
        self.winner[0]
    }

    pub fn winner_at(&self, v: usize) -> Player {
        self.winner[v]
    }

    pub fn region(&self, p: Player) -> impl Iterator<Item = usize> + '_ {
        self.winner.iter().enumerate().filter(move |(_, &w)| w == p).map(|(v, _)| v)
    }

    /// The move (successor index) of the winning player at `v`, if `v` is
    /// owned by the player who wins it.
    pub fn choice(&self, v: usize) -> Option<usize> {
        self.strategy[v].map(|m| m as usize)
    }
}

const UNRANKED: usize = usize::MAX;

struct Attractor<'g> {
    game: &'g BuchiGame,
    pred_off: Vec<usize>,
    pred: Vec<u32>,
    alive: FixedBitSet,
    rank: Vec<usize>,
    next_rank: usize,
}

impl Attractor<'_> {
    /// Attracts `seeds` for `p` inside the alive subgame, assigning ranks
    /// in insertion order. Returns the attracted nodes.
    fn attract(&mut self, p: Player, seeds: &[usize]) -> FixedBitSet {
        let g = self.game;
        let n = g.num_nodes();
        let mut set = FixedBitSet::with_capacity(n);
        let mut count = vec![0usize; n];
        let mut queue = VecDeque::new();
        for &s in seeds {
            set.insert(s);
            self.rank[s] = self.next_rank;
            self.next_rank += 1;
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.pred[self.pred_off[u]..self.pred_off[u + 1]] {
                let v = v as usize;
                if !self.alive.contains(v) || set.contains(v) {
                    continue;
                }
                let pulled = if g.owner(v) == p {
                    true
                } else {
                    if count[v] == 0 {
                        count[v] = g.successors(v).iter().filter(|&&w| self.alive.contains(w as usize)).count();
                    }
                    count[v] -= 1;
                    count[v] == 0
                };
                if pulled {
                    set.insert(v);
                    self.rank[v] = self.next_rank;
                    self.next_rank += 1;
                    queue.push_back(v);
                }
            }
        }
        set
    }
}

/// Solves the Büchi game "Player O visits target nodes infinitely often"
/// with the classical iterated attractor algorithm.
///
/// Strategies are canonical: at each node the winner takes the lowest-index
/// move that makes progress (towards the target for O, towards the trap
/// for I) or, inside the trap or target, that stays in the winning region.
pub fn solve_buchi(game: &BuchiGame) -> BuchiSolution {
    let n = game.num_nodes();
    let (pred_off, pred) = game.predecessors();
    let mut alive = FixedBitSet::with_capacity(n);
    alive.insert_range(..);
    let mut st = Attractor { game, pred_off, pred, alive, rank: vec![UNRANKED; n], next_rank: 0 };
    let mut winner = vec![Player::O; n];
    let mut strategy = vec![None; n];
    // iteration index and trap membership for Player I's strategy
    let mut round_of = vec![usize::MAX; n];
    let mut in_trap = FixedBitSet::with_capacity(n);
    let mut round = 0;
    loop {
        let seeds: Vec<usize> = st.alive.ones().filter(|&v| game.is_target(v)).collect();
        let first_rank = st.next_rank;
        let reach = st.attract(Player::O, &seeds);
        let trap: Vec<usize> = st.alive.ones().filter(|&v| !reach.contains(v)).collect();
        if trap.is_empty() {
            // the alive part is O's region; ranks of this last attractor
            // order O's progress moves
            for v in st.alive.ones() {
                if game.owner(v) != Player::O {
                    continue;
                }
                let succ = game.successors(v);
                let pick = if game.is_target(v) {
                    succ.iter().position(|&w| st.alive.contains(w as usize))
                } else {
                    succ.iter().position(|&w| {
                        let r = st.rank[w as usize];
                        st.alive.contains(w as usize) && r >= first_rank && r < st.rank[v]
                    })
                };
                strategy[v] = Some(pick.expect("attractor node has a progress move") as u32);
            }
            break;
        }
        for &v in &trap {
            in_trap.insert(v);
        }
        let lost = st.attract(Player::I, &trap);
        for v in lost.ones() {
            winner[v] = Player::I;
            round_of[v] = round;
        }
        for v in lost.ones() {
            if game.owner(v) != Player::I {
                continue;
            }
            let succ = game.successors(v);
            let pick = if in_trap.contains(v) {
                succ.iter().position(|&w| round_of[w as usize] == round && in_trap.contains(w as usize))
            } else {
                succ.iter().position(|&w| round_of[w as usize] == round && st.rank[w as usize] < st.rank[v])
            };
            strategy[v] = Some(pick.expect("trap node has a move inside its region") as u32);
        }
        st.alive.difference_with(&lost);
        round += 1;
        if st.alive.is_clear() {
            break;
        }
    }
    BuchiSolution { winner, strategy }
}
