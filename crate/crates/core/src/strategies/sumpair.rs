use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{InputStrategy, OutputStrategy, PlayView, StrategyError};
use crate::jpair::{first_bad_jpair_in, free_letters};

use super::{input_token, output_token};

/// Token indices of the sumpair alphabet as laid out in a concrete game.
struct Tokens {
    bit_in: [usize; 2],
    hash_in: usize,
    bit_out: [usize; 2],
    check: usize,
    hash_out: usize,
}

impl Tokens {
    fn of(view: &PlayView) -> Result<Self, StrategyError> {
        Ok(Tokens {
            bit_in: [input_token(view, "0")?, input_token(view, "1")?],
            hash_in: input_token(view, "#")?,
            bit_out: [output_token(view, "0")?, output_token(view, "1")?],
            check: output_token(view, "✓")?,
            hash_out: output_token(view, "#")?,
        })
    }

    fn input_bit(&self, x: usize) -> Option<u64> {
        self.bit_in.iter().position(|&b| b == x).map(|b| b as u64)
    }

    fn output_bit(&self, y: usize) -> Option<u64> {
        self.bit_out.iter().position(|&b| b == y).map(|b| b as u64)
    }
}

/// Value of input block `b` if it is completely visible: `Some(None)` for
/// a malformed block, `None` if part of it is not yet played.
fn input_block(view: &PlayView, tok: &Tokens, n: usize, b: usize) -> Option<Option<u64>> {
    let start = b * (n + 1);
    let block = view.inputs.get(start..start + n + 1)?;
    let mut v = 0;
    for (t, &x) in block[..n].iter().enumerate() {
        match tok.input_bit(x) {
            Some(bit) => v |= bit << t,
            None => return Some(None),
        }
    }
    Some((block[n] == tok.hash_in).then_some(v))
}

/// The visible low bits of input block `b`, unplayed or malformed bits as 0.
fn partial_input_block(view: &PlayView, tok: &Tokens, n: usize, b: usize) -> u64 {
    (0..n)
        .filter_map(|t| view.inputs.get(b * (n + 1) + t).and_then(|&x| tok.input_bit(x)).map(|bit| bit << t))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Strict,
    Lenient,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Plan {
    y0: u64,
    /// Blocks to mark; the `✓` goes after the preceding block.
    first: usize,
    second: Option<usize>,
    /// Whether the second mark is still being searched for.
    adaptive: bool,
}

/// Player O for the bad y₀-pair game.
///
/// The scripted strategy reads input blocks `x₁ … x_{2^(2ⁿ)}` at the start,
/// takes the first bad y₀-pair among them, plays y₀ in block 0, marks the
/// pair and answers `yᵢ = y₀ − xᵢ` strictly between the marks; every
/// other output block is 0. A malformed input window means Player I has
/// already lost, and the strategy just plays zeros.
///
/// The greedy variant copies `x₁` (as far as visible) into y₀, marks block
/// 1 and marks the next block it sees equal to y₀. The lenient variant is
/// the scripted one over the visible blocks, falling back to greedy when
/// they contain no pair.
#[derive(Debug, Clone)]
pub struct OSumPair {
    n: usize,
    mode: Mode,
    plan: Option<Plan>,
    decided: bool,
}

impl OSumPair {
    pub fn new(n: usize) -> Self {
        OSumPair { n, mode: Mode::Strict, plan: None, decided: false }
    }

    pub fn lenient(n: usize) -> Self {
        OSumPair { mode: Mode::Lenient, ..OSumPair::new(n) }
    }

    pub fn greedy(n: usize) -> Self {
        OSumPair { mode: Mode::Greedy, ..OSumPair::new(n) }
    }

    /// Lookahead the scripted strategy needs: block 0 and the next
    /// `2^(2ⁿ)` blocks.
    pub fn required_lookahead(n: usize) -> usize {
        ((1usize << (1usize << n)) + 1) * (n + 1)
    }

    fn greedy_plan(&self, view: &PlayView, tok: &Tokens) -> Plan {
        Plan { y0: partial_input_block(view, tok, self.n, 1), first: 1, second: None, adaptive: true }
    }

    fn decide(&mut self, view: &PlayView, tok: &Tokens) -> Result<(), StrategyError> {
        let blocks = 1usize << (1usize << self.n);
        self.plan = match self.mode {
            Mode::Greedy => Some(self.greedy_plan(view, tok)),
            Mode::Strict => {
                let needed = Self::required_lookahead(self.n);
                if view.lookahead < needed {
                    return Err(StrategyError::InsufficientLookahead { needed, available: view.lookahead });
                }
                let values: Option<Vec<u64>> =
                    (1..=blocks).map(|b| input_block(view, tok, self.n, b).flatten()).collect();
                match values {
                    None => None,
                    Some(values) => {
                        let letters: Vec<usize> = values.iter().map(|&v| v as usize).collect();
                        let (y0, p, q) = first_bad_jpair_in(&letters).ok_or(StrategyError::NoBadPair)?;
                        Some(Plan { y0: y0 as u64, first: p + 1, second: Some(q + 1), adaptive: false })
                    }
                }
            }
            Mode::Lenient => {
                let letters: Vec<usize> = (1..)
                    .map_while(|b| input_block(view, tok, self.n, b).flatten())
                    .map(|v| v as usize)
                    .collect();
                match first_bad_jpair_in(&letters) {
                    Some((y0, p, q)) => Some(Plan { y0: y0 as u64, first: p + 1, second: Some(q + 1), adaptive: false }),
                    None => Some(self.greedy_plan(view, tok)),
                }
            }
        };
        Ok(())
    }
}

impl OutputStrategy for OSumPair {
    fn name(&self) -> String {
        let mode = match self.mode {
            Mode::Strict => "",
            Mode::Lenient => ",lenient",
            Mode::Greedy => ",greedy",
        };
        format!("o-sumpair({}{mode})", self.n)
    }

    fn next_output(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        let tok = Tokens::of(view)?;
        if !self.decided {
            self.decide(view, &tok)?;
            self.decided = true;
        }
        let n = self.n;
        let i = view.outputs.len();
        let (b, t) = (i / (n + 1), i % (n + 1));
        let Some(plan) = self.plan.as_mut() else {
            return Ok(if t == n { tok.hash_out } else { tok.bit_out[0] });
        };
        if t == n {
            if plan.adaptive && plan.second.is_none() && b + 1 > plan.first {
                if let Some(Some(v)) = input_block(view, &tok, n, b + 1) {
                    if v == plan.y0 {
                        plan.second = Some(b + 1);
                    }
                }
            }
            let mark = b + 1 == plan.first || plan.second == Some(b + 1);
            return Ok(if mark { tok.check } else { tok.hash_out });
        }
        let bit = if b == 0 {
            plan.y0 >> t & 1
        } else if b > plan.first && plan.second.is_none_or(|s| b < s) {
            let mask = (1u64 << (t + 1)) - 1;
            let x = partial_input_block(view, &tok, n, b) & mask;
            (plan.y0.wrapping_sub(x) & mask) >> t
        } else {
            0
        };
        Ok(tok.bit_out[bit as usize])
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        let n = self.n;
        let i = view.outputs.len();
        let (b, t) = ((i / (n + 1)) as u64, (i % (n + 1)) as u64);
        if !self.decided {
            return Some(vec![3]);
        }
        Some(match self.plan {
            None => vec![1, t],
            Some(p) if p.second.is_some_and(|s| i >= s * (n + 1)) => vec![1, t],
            Some(p) if p.adaptive => vec![0, b.min(2), t, p.y0],
            Some(p) => vec![2, i as u64, p.y0, p.first as u64, p.second.unwrap_or(0) as u64],
        })
    }
}

/// Player I for the bad y₀-pair game: block 0 is 0, then the blocks of the
/// bad-pair-free word over `{0, …, 2ⁿ−1}`. Once y₀ is readable it repeats
/// `(y₀+1) mod 2ⁿ` forever; before that, blocks beyond the script are 0.
#[derive(Debug, Clone)]
pub struct ISumPairSpoiler {
    n: usize,
    blocks: Vec<u64>,
}

impl ISumPairSpoiler {
    pub fn new(n: usize) -> Self {
        let mut blocks = vec![0];
        blocks.extend(free_letters(1 << n).into_iter().map(|v| v as u64));
        ISumPairSpoiler { n, blocks }
    }

    /// Largest lookahead at which Player I still learns y₀ before leaving
    /// the script: the script has `2^(2ⁿ)·(n+1)` letters and y₀ is known
    /// after n rounds.
    pub fn max_lookahead(n: usize) -> usize {
        (1usize << (1usize << n)) * (n + 1) - n + 1
    }

    fn y0(&self, view: &PlayView, tok: &Tokens) -> Option<u64> {
        let bits = view.outputs.get(..self.n)?;
        Some(bits.iter().enumerate().map(|(t, &y)| tok.output_bit(y).unwrap_or(0) << t).sum())
    }
}

impl InputStrategy for ISumPairSpoiler {
    fn name(&self) -> String {
        format!("i-sumpair-spoiler({})", self.n)
    }

    fn next_input(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        let tok = Tokens::of(view)?;
        let p = view.inputs.len();
        let (b, t) = (p / (self.n + 1), p % (self.n + 1));
        if t == self.n {
            return Ok(tok.hash_in);
        }
        let v = match (self.blocks.get(b), self.y0(view, &tok)) {
            (Some(&v), _) => v,
            (None, Some(y0)) => (y0 + 1) % (1 << self.n),
            (None, None) => 0,
        };
        Ok(tok.bit_in[(v >> t & 1) as usize])
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        let tok = Tokens::of(view).ok()?;
        let p = view.inputs.len();
        let script = self.blocks.len() * (self.n + 1);
        let pos = if p < script { p } else { script + p % (self.n + 1) };
        Some(vec![pos as u64, self.y0(view, &tok).unwrap_or(u64::MAX)])
    }
}

/// A random valid input encoding: seeded blocks forming an eventually
/// periodic sequence of numbers.
#[derive(Debug, Clone)]
pub struct RandomSumPairInput {
    n: usize,
    seed: u64,
    prefix: Vec<u64>,
    cycle: Vec<u64>,
}

impl RandomSumPairInput {
    pub fn new(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let limit = 1u64 << n;
        let p = rng.gen_range(0..=4);
        let c = rng.gen_range(1..=3);
        let prefix = (0..p).map(|_| rng.gen_range(0..limit)).collect();
        let cycle = (0..c).map(|_| rng.gen_range(0..limit)).collect();
        RandomSumPairInput { n, seed, prefix, cycle }
    }

    fn block_index(&self, b: usize) -> usize {
        if b < self.prefix.len() {
            b
        } else {
            self.prefix.len() + (b - self.prefix.len()) % self.cycle.len()
        }
    }

    fn value(&self, b: usize) -> u64 {
        let i = self.block_index(b);
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.cycle[i - self.prefix.len()]
        }
    }
}

impl InputStrategy for RandomSumPairInput {
    fn name(&self) -> String {
        format!("random-sumpair-input({},seed={})", self.n, self.seed)
    }

    fn next_input(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        let tok = Tokens::of(view)?;
        let p = view.inputs.len();
        let (b, t) = (p / (self.n + 1), p % (self.n + 1));
        Ok(if t == self.n { tok.hash_in } else { tok.bit_in[(self.value(b) >> t & 1) as usize] })
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        let p = view.inputs.len();
        let (b, t) = (p / (self.n + 1), p % (self.n + 1));
        Some(vec![self.block_index(b) as u64, t as u64])
    }
}

/// A random valid output encoding: random bits, two marks at seeded
/// blocks, zeros after the second mark.
#[derive(Debug, Clone)]
pub struct RandomSumPairOutput {
    n: usize,
    seed: u64,
    first: usize,
    second: usize,
    bits: Vec<u64>,
}

impl RandomSumPairOutput {
    pub fn new(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = rng.gen_range(1..=4);
        let second = first + rng.gen_range(1..=4);
        let bits = (0..second * (n + 1)).map(|_| rng.gen_range(0..2)).collect();
        RandomSumPairOutput { n, seed, first, second, bits }
    }
}

impl OutputStrategy for RandomSumPairOutput {
    fn name(&self) -> String {
        format!("random-sumpair-output({},seed={})", self.n, self.seed)
    }

    fn next_output(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        let tok = Tokens::of(view)?;
        let i = view.outputs.len();
        let (b, t) = (i / (self.n + 1), i % (self.n + 1));
        if t == self.n {
            let mark = b + 1 == self.first || b + 1 == self.second;
            return Ok(if mark { tok.check } else { tok.hash_out });
        }
        Ok(tok.bit_out[*self.bits.get(i).unwrap_or(&0) as usize])
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        let i = view.outputs.len();
        let end = self.second * (self.n + 1);
        Some(if i < end { vec![0, i as u64] } else { vec![1, (i % (self.n + 1)) as u64] })
    }
}
