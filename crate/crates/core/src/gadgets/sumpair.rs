use std::collections::HashMap;

use crate::acceptance::{Acceptance, WeakMullerCondition};
use crate::automaton::{Automaton, AutomatonBuilder, Letter, LetterId, StateId};
use crate::formula::Formula;
use crate::lasso::Lasso;

use super::{adder_state, cell, check_range, GadgetError};

/// Input tokens: bits and the block separator.
pub const SUM_PAIR_INPUTS: [&str; 3] = ["0", "1", "#"];
/// Output tokens: bits, the marker and the plain separator.
pub const SUM_PAIR_OUTPUTS: [&str; 4] = ["0", "1", "✓", "#"];

const HASH_IN: usize = 2;
const CHECK: usize = 2;

/// Letter index of `(input, output)` with the token indices of
/// [`SUM_PAIR_INPUTS`] and [`SUM_PAIR_OUTPUTS`].
pub fn sum_pair_letter(x: usize, y: usize) -> LetterId {
    x * SUM_PAIR_OUTPUTS.len() + y
}

pub fn sum_pair_split_letter(l: LetterId) -> (usize, usize) {
    (l / SUM_PAIR_OUTPUTS.len(), l % SUM_PAIR_OUTPUTS.len())
}

/// How the sums between the marked numbers are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CarryCheck {
    /// `xᵢ + yᵢ = y₀` over the integers: a final carry is forbidden.
    #[default]
    Strict,
    /// `xᵢ + yᵢ ≡ y₀ (mod 2ⁿ)`.
    Modular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum St {
    Init,
    /// Block 0: bit k of y₀ is b.
    S(usize, usize),
    /// Unmarked blocks before the first mark; next letter at this offset.
    F1(usize),
    M1Start,
    /// First marked block: bit k of x_j is b.
    M1(usize, usize),
    AStart,
    /// Between the marks: bit k of xᵢ + yᵢ is b, carry c.
    A(usize, usize, usize),
    M2Start,
    M2(usize, usize),
    /// Blocks after the second mark.
    F2(usize),
    Acc,
    Rej,
}

impl St {
    fn name(self) -> String {
        match self {
            St::Init => "q_I".into(),
            St::S(k, b) => cell("S", k, b),
            St::F1(k) => format!("F1_{k}"),
            St::M1Start => "M1_start".into(),
            St::M1(k, b) => cell("M1", k, b),
            St::AStart => "A_start".into(),
            St::A(k, b, c) => adder_state("A", k, b, c),
            St::M2Start => "M2_start".into(),
            St::M2(k, b) => cell("M2", k, b),
            St::F2(k) => format!("F2_{k}"),
            St::Acc => "q_acc".into(),
            St::Rej => "q_rej".into(),
        }
    }

    /// Offset within the current block of the next letter.
    fn offset(self) -> usize {
        match self {
            St::Init | St::M1Start | St::AStart | St::M2Start => 0,
            St::S(k, _) | St::M1(k, _) | St::A(k, _, _) | St::M2(k, _) => k + 1,
            St::F1(k) | St::F2(k) => k,
            St::Acc | St::Rej => 0,
        }
    }

    fn step(self, n: usize, x: usize, y: usize) -> St {
        if matches!(self, St::Acc | St::Rej) {
            return self;
        }
        if self.offset() < n {
            // a bit position; an input error takes priority
            if x == HASH_IN {
                return St::Acc;
            }
            if y >= 2 {
                return St::Rej;
            }
            match self {
                St::Init => St::S(0, y),
                St::S(k, _) => St::S(k + 1, y),
                St::F1(k) => St::F1(k + 1),
                St::M1Start => St::M1(0, x),
                St::M1(k, _) => St::M1(k + 1, x),
                St::AStart => St::A(0, (x + y) % 2, (x + y) / 2),
                St::A(k, _, c) => St::A(k + 1, (x + y + c) % 2, (x + y + c) / 2),
                St::M2Start => St::M2(0, x),
                St::M2(k, _) => St::M2(k + 1, x),
                St::F2(k) => St::F2(k + 1),
                St::Acc | St::Rej => unreachable!(),
            }
        } else {
            if x != HASH_IN {
                return St::Acc;
            }
            if y < 2 {
                return St::Rej;
            }
            let mark = y == CHECK;
            match self {
                St::S(..) | St::F1(_) => if mark { St::M1Start } else { St::F1(0) },
                St::M1(..) | St::A(..) => if mark { St::M2Start } else { St::AStart },
                St::M2(..) | St::F2(_) => if mark { St::Rej } else { St::F2(0) },
                _ => unreachable!("separator offset only after a full block"),
            }
        }
    }
}

/// The deterministic Emerson-Lei automaton for the bad y₀-pair game over
/// n-bit numbers.
///
/// Input: blocks of n bits (least significant first) each followed by `#`.
/// Output: blocks of n bits each followed by `✓` or `#`; a `✓` after block
/// j−1 marks block j, and exactly two marks are allowed. Gadgets `S`
/// (stores y₀), `M1`/`M2` (store the marked numbers) and `A` (adds xᵢ and
/// yᵢ between the marks) check the format on the way: an input violation
/// leads to `q_acc`, an output violation to `q_rej`, the input winning
/// ties. The condition is `¬q_rej ∧ (q_acc ∨ ψ)` with
///
/// ```text
/// ψ = ⋀ₖ ⋀_b S⟨k/b⟩ → (M1⟨k/b⟩ ∧ M2⟨k/b⟩ ∧ ⋀_{b'} ¬A⟨k/1−b/b'⟩)
/// ```
///
/// and, for [`CarryCheck::Strict`], additionally `⋀_b ¬A⟨n−1/b/1⟩`.
pub fn sum_pair_automaton(n: usize, carry: CarryCheck) -> Result<Automaton, GadgetError> {
    check_range("sumpair", n, 1, 16)?;
    let alphabet: Vec<Letter> = SUM_PAIR_INPUTS
        .iter()
        .flat_map(|&i| SUM_PAIR_OUTPUTS.iter().map(move |&o| Letter::pair(i, o)))
        .collect();
    let mut b = AutomatonBuilder::new(alphabet);
    let mut index: HashMap<St, StateId> = HashMap::new();
    let mut queue = vec![St::Init];
    index.insert(St::Init, b.state(St::Init.name()));
    let mut i = 0;
    while i < queue.len() {
        let s = queue[i];
        for x in 0..SUM_PAIR_INPUTS.len() {
            for y in 0..SUM_PAIR_OUTPUTS.len() {
                let t = s.step(n, x, y);
                let dst = *index.entry(t).or_insert_with(|| {
                    queue.push(t);
                    b.state(t.name())
                });
                b.edge(index[&s], sum_pair_letter(x, y), dst);
            }
        }
        i += 1;
    }
    let v = |s: St| Formula::var(index[&s]);
    let opt = |s: St| index.get(&s).map(|&q| Formula::var(q));
    let psi_cells = (0..n).flat_map(|k| {
        (0..2).map(move |bit| (k, bit))
    });
    let mut psi: Vec<Formula<StateId>> = psi_cells
        .map(|(k, bit)| {
            let mut rhs = vec![v(St::M1(k, bit)), v(St::M2(k, bit))];
            rhs.extend((0..2).filter_map(|c| opt(St::A(k, 1 - bit, c)).map(Formula::not)));
            Formula::implies(v(St::S(k, bit)), Formula::and(rhs))
        })
        .collect();
    if carry == CarryCheck::Strict {
        psi.extend((0..2).filter_map(|bit| opt(St::A(n - 1, bit, 1)).map(Formula::not)));
    }
    let phi = Formula::and([
        Formula::not(v(St::Rej)),
        Formula::or([v(St::Acc), Formula::and(psi)]),
    ]);
    Ok(b.build(0, Acceptance::WeakMuller(WeakMullerCondition::EmersonLei(phi))).expect("well formed"))
}

/// Decides membership in the bad y₀-pair language directly on the word,
/// without the automaton. Letters use the [`sum_pair_letter`] encoding.
///
/// Let `i_in` (`i_out`) be the first position where the input (output)
/// prefix cannot be completed to a valid encoding. If `i_in ≤ i_out` the
/// word is accepted, if `i_out < i_in` it is rejected. If neither exists,
/// it is accepted iff there are exactly two marks, both marked numbers
/// equal y₀, and every number strictly between satisfies `xᵢ + yᵢ = y₀`.
pub fn sum_pair_semantic_accepts(n: usize, carry: CarryCheck, lasso: &Lasso) -> bool {
    let block = n + 1;
    let period = lcm(lasso.cycle().len(), block);
    // Enough letters to see every (position class, letter) combination of
    // the periodic part at least three times.
    let horizon = lasso.spoke().len() + 4 * period + 2 * block;
    let word: Vec<(usize, usize)> = lasso.prefix(horizon).into_iter().map(sum_pair_split_letter).collect();
    let mut i_in = None;
    let mut i_out = None;
    let mut marks = Vec::new();
    for (i, &(x, y)) in word.iter().enumerate() {
        let sep = i % block == n;
        if i_in.is_none() && (x == HASH_IN) != sep {
            i_in = Some(i);
        }
        if i_out.is_none() {
            if (y >= 2) != sep {
                i_out = Some(i);
            } else if y == CHECK {
                if marks.len() == 2 {
                    i_out = Some(i);
                } else {
                    marks.push(i / block + 1);
                }
            }
        }
    }
    match (i_in, i_out) {
        (Some(a), Some(b)) => return a <= b,
        (Some(_), None) => return true,
        (None, Some(_)) => return false,
        (None, None) => {}
    }
    if marks.len() != 2 {
        return false;
    }
    let number = |blk: usize, output: bool| -> u64 {
        (0..n)
            .map(|k| {
                let (x, y) = sum_pair_split_letter(lasso.letter(blk * block + k));
                let bit = if output { y } else { x };
                (bit as u64) << k
            })
            .sum()
    };
    let y0 = number(0, true);
    let (j, j2) = (marks[0], marks[1]);
    if number(j, false) != y0 || number(j2, false) != y0 {
        return false;
    }
    (j + 1..j2).all(|i| {
        let s = number(i, false) + number(i, true);
        match carry {
            CarryCheck::Strict => s == y0,
            CarryCheck::Modular => s % (1 << n) == y0,
        }
    })
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}
