//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use delaygame::engine::Player;
use delaygame::{Acceptance, Automaton, Lasso, StateId, StateSet};

/// Max-even parity game solved with Zielonka's recursive algorithm.
/// Player O wins a play iff the largest color seen infinitely often is even.
pub fn zielonka(owner: &[Player], color: &[u32], succ: &[Vec<usize>]) -> Vec<Player> {
    let n = owner.len();
    let mut pred = vec![Vec::new(); n];
    for (v, s) in succ.iter().enumerate() {
        for &w in s {
            pred[w].push(v);
        }
    }
    let g = Game { owner, color, succ, pred };
    let all: Vec<bool> = vec![true; n];
    let (w_o, _) = g.solve(&all);
    (0..n).map(|v| if w_o[v] { Player::O } else { Player::I }).collect()
}

struct Game<'a> {
    owner: &'a [Player],
    color: &'a [u32],
    succ: &'a [Vec<usize>],
    pred: Vec<Vec<usize>>,
}

impl Game<'_> {
    fn attr(&self, p: Player, target: &[bool], alive: &[bool]) -> Vec<bool> {
        let n = alive.len();
        let mut set = target.to_vec();
        let mut count: Vec<usize> =
            (0..n).map(|v| self.succ[v].iter().filter(|&&w| alive[w]).count()).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| set[v]).collect();
        while let Some(u) = queue.pop_front() {
            for &v in &self.pred[u] {
                if !alive[v] || set[v] {
                    continue;
                }
                if self.owner[v] == p {
                    set[v] = true;
                    queue.push_back(v);
                } else {
                    count[v] -= 1;
                    if count[v] == 0 {
                        set[v] = true;
                        queue.push_back(v);
                    }
                }
            }
        }
        set
    }

    /// Returns (O's region, I's region) of the subgame on `alive`.
    fn solve(&self, alive: &[bool]) -> (Vec<bool>, Vec<bool>) {
        let n = alive.len();
        let Some(d) = (0..n).filter(|&v| alive[v]).map(|v| self.color[v]).max() else {
            return (vec![false; n], vec![false; n]);
        };
        let p = if d % 2 == 0 { Player::O } else { Player::I };
        let top: Vec<bool> = (0..n).map(|v| alive[v] && self.color[v] == d).collect();
        let a = self.attr(p, &top, alive);
        let rest: Vec<bool> = (0..n).map(|v| alive[v] && !a[v]).collect();
        let (w_o, w_i) = self.solve(&rest);
        let w_q = if p == Player::O { w_i } else { w_o };
        if !w_q.iter().any(|&b| b) {
            let region: Vec<bool> = alive.to_vec();
            let empty = vec![false; n];
            return if p == Player::O { (region, empty) } else { (empty, region) };
        }
        let b = self.attr(p.opponent(), &w_q, alive);
        let rest: Vec<bool> = (0..n).map(|v| alive[v] && !b[v]).collect();
        let (w_o2, w_i2) = self.solve(&rest);
        let (w_p2, w_q2) = if p == Player::O { (w_o2, w_i2) } else { (w_i2, w_o2) };
        let w_q: Vec<bool> = (0..n).map(|v| w_q2[v] || b[v]).collect();
        if p == Player::O {
            (w_p2, w_q)
        } else {
            (w_q, w_p2)
        }
    }
}

fn accepts_occurrence(a: &Automaton, occ: &StateSet) -> bool {
    a.acceptance().accepts_occurrence(occ).expect("occurrence-based condition")
}

/// Lasso membership by brute force over configurations at cycle
/// boundaries; handles non-deterministic automata.
pub fn oracle_accepts(a: &Automaton, lasso: &Lasso) -> bool {
    match a.acceptance() {
        Acceptance::Parity(colors) => parity_oracle(a, colors, lasso),
        _ => occurrence_oracle(a, lasso),
    }
}

fn occurrence_oracle(a: &Automaton, lasso: &Lasso) -> bool {
    let width = a.num_states();
    let step = |configs: &BTreeSet<(StateId, StateSet)>, word: &[usize]| {
        let mut cur = configs.clone();
        for &l in word {
            let mut next = BTreeSet::new();
            for (q, occ) in &cur {
                for &r in a.successors(*q, l) {
                    next.insert((r, occ.with(r)));
                }
            }
            cur = next;
        }
        cur
    };
    let start = BTreeSet::from([(a.initial(), StateSet::singleton(width, a.initial()))]);
    let mut reach = step(&start, lasso.spoke());
    loop {
        let next = step(&reach, lasso.cycle());
        let before = reach.len();
        reach.extend(next);
        if reach.len() == before {
            break;
        }
    }
    reach.iter().any(|(q, occ)| accepts_occurrence(a, occ) && stays_within(a, lasso.cycle(), occ).contains(*q))
}

/// States of `within` from which `cycle^ω` can be read forever without
/// leaving `within`.
fn stays_within(a: &Automaton, cycle: &[usize], within: &StateSet) -> StateSet {
    let mut g = within.clone();
    loop {
        let mut next = StateSet::empty(a.num_states());
        for p in g.iter() {
            let mut cur: HashSet<StateId> = HashSet::from([p]);
            for &l in cycle {
                cur = cur.iter().flat_map(|&q| a.successors(q, l).iter().copied()).filter(|&r| within.contains(r)).collect();
            }
            if cur.iter().any(|&r| g.contains(r)) {
                next.insert(p);
            }
        }
        if next == g {
            return g;
        }
        g = next;
    }
}

fn parity_oracle(a: &Automaton, colors: &[u32], lasso: &Lasso) -> bool {
    let n = a.num_states();
    let run = |from: &HashSet<StateId>, word: &[usize]| -> HashSet<StateId> {
        let mut cur = from.clone();
        for &l in word {
            cur = cur.iter().flat_map(|&q| a.successors(q, l).iter().copied()).collect();
        }
        cur
    };
    let mut boundary = run(&HashSet::from([a.initial()]), lasso.spoke());
    loop {
        let next = run(&boundary, lasso.cycle());
        let before = boundary.len();
        boundary.extend(next);
        if boundary.len() == before {
            break;
        }
    }
    // options[q] = {(q', c)}: reading the cycle from q can end in q' with
    // largest color c among the states entered
    let options: Vec<BTreeSet<(StateId, u32)>> = (0..n)
        .map(|q| {
            let mut cur: BTreeSet<(StateId, u32)> = BTreeSet::from([(q, 0)]);
            for &l in lasso.cycle() {
                cur = cur
                    .iter()
                    .flat_map(|&(p, c)| {
                        a.successors(p, l).iter().map(move |&r| (r, c.max(colors[r])))
                    })
                    .collect();
            }
            cur
        })
        .collect();
    let reaches = |from: StateId, to: StateId, bound: u32| -> bool {
        let mut seen = HashSet::from([from]);
        let mut stack = vec![from];
        while let Some(p) = stack.pop() {
            if p == to {
                return true;
            }
            for &(r, c) in &options[p] {
                if c <= bound && seen.insert(r) {
                    stack.push(r);
                }
            }
        }
        false
    };
    boundary.iter().any(|&b| {
        // an accepting cycle reachable from boundary state b
        let mut seen = HashSet::from([b]);
        let mut stack = vec![b];
        while let Some(q) = stack.pop() {
            for &(r, c) in &options[q] {
                if c % 2 == 0 && reaches(r, q, c) {
                    return true;
                }
                if seen.insert(r) {
                    stack.push(r);
                }
            }
        }
        false
    })
}

/// All bad j-pairs by the definition.
pub fn naive_bad_pairs(w: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for p in 0..w.len() {
        for q in p + 1..w.len() {
            if w[p] == w[q] && w[p + 1..q].iter().all(|&x| x < w[p]) {
                out.push((w[p], p, q));
            }
        }
    }
    out
}

/// Longest path from the initial state counting edges that enlarge the
/// tracked occurrence set, by repeated relaxation.
pub fn longest_growth(t: &delaygame::Translation) -> usize {
    let a = &t.automaton;
    let n = a.num_states();
    let mut best = vec![None::<usize>; n];
    best[a.initial()] = Some(0);
    loop {
        let mut changed = false;
        for (p, _, q) in a.transitions() {
            let Some(d) = best[p] else { continue };
            let w = usize::from(t.tracked[q].occ.len() > t.tracked[p].occ.len());
            if best[q].is_none_or(|e| e < d + w) {
                best[q] = Some(d + w);
                changed = true;
            }
        }
        if !changed {
            return best.into_iter().flatten().max().unwrap_or(0);
        }
    }
}

/// Every lasso over `m` letters with `1 ≤ |v| ≤ max` and `|u| ≤ max`.
pub fn all_lassos(m: usize, max: usize) -> Vec<Lasso> {
    let words = |len: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out.into_iter().flat_map(|w| (0..m).map(move |l| [w.clone(), vec![l]].concat())).collect();
        }
        out
    };
    let mut out = Vec::new();
    for u_len in 0..=max {
        for v_len in 1..=max {
            for u in words(u_len) {
                for v in words(v_len) {
                    out.push(Lasso::new(u.clone(), v).unwrap());
                }
            }
        }
    }
    out
}

/// Random lassos over the sumpair alphabet: a third uniformly random
/// letters, a third random block-structured words, a third built around a
/// correctly marked bad pair (half of those with one letter mutated).
pub fn random_sum_pair_lasso(rng: &mut impl rand::Rng, n: usize) -> Lasso {
    use delaygame::gadgets::sum_pair_letter;
    let block = n + 1;
    let limit = 1u64 << n;
    let kind = rng.gen_range(0..3);
    if kind == 0 {
        let u = (0..rng.gen_range(0..8)).map(|_| rng.gen_range(0..12)).collect();
        let v = (0..rng.gen_range(1..6)).map(|_| rng.gen_range(0..12)).collect();
        return Lasso::new(u, v).unwrap();
    }
    // (x, y, separator output) per block
    let mut blocks: Vec<(u64, u64, usize)> = Vec::new();
    let spoke_blocks;
    if kind == 1 {
        spoke_blocks = rng.gen_range(1..6);
        for _ in 0..spoke_blocks + rng.gen_range(1..3) {
            let sep = if rng.gen_bool(0.2) { 2 } else { 3 };
            blocks.push((rng.gen_range(0..limit), rng.gen_range(0..limit), sep));
        }
    } else {
        let y0 = rng.gen_range(0..limit);
        blocks.push((rng.gen_range(0..limit), y0, 3));
        for _ in 0..rng.gen_range(0..3) {
            blocks.push((rng.gen_range(0..limit), 0, 3));
        }
        let last = blocks.len() - 1;
        blocks[last].2 = 2;
        blocks.push((y0, 0, 3));
        for _ in 0..rng.gen_range(0..3) {
            let x = rng.gen_range(0..=y0);
            blocks.push((x, y0 - x, 3));
        }
        let last = blocks.len() - 1;
        blocks[last].2 = 2;
        blocks.push((y0, 0, 3));
        spoke_blocks = blocks.len();
        blocks.push((rng.gen_range(0..limit), 0, 3));
    }
    let mut letters: Vec<usize> = blocks
        .iter()
        .flat_map(|&(x, y, sep)| {
            (0..n)
                .map(move |t| sum_pair_letter((x >> t & 1) as usize, (y >> t & 1) as usize))
                .chain(std::iter::once(sum_pair_letter(2, sep)))
        })
        .collect();
    if kind == 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..letters.len());
        letters[i] = rng.gen_range(0..12);
    }
    let cycle = letters.split_off(spoke_blocks * block);
    Lasso::new(letters, cycle).unwrap()
}
