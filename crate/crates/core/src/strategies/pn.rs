use crate::jpair::{first_bad_jpair_in, free_letters};
use crate::engine::{InputStrategy, OutputStrategy, PlayView, StrategyError};

use super::{input_token, output_token};

fn letter_values(view: &PlayView, xs: &[usize]) -> Vec<usize> {
    xs.iter().map(|&x| view.io.inputs()[x].parse().unwrap_or(usize::MAX)).collect()
}

/// Picks `β(0) = j` for the first bad j-pair in the buffered `α(1)…`,
/// then plays output `0` forever.
///
/// With `lenient`, a buffer without a bad pair makes it pick `0` instead
/// of failing.
#[derive(Debug, Clone)]
pub struct OPn {
    n: usize,
    lenient: bool,
}

impl OPn {
    pub fn new(n: usize) -> Self {
        OPn { n, lenient: false }
    }

    pub fn lenient(n: usize) -> Self {
        OPn { n, lenient: true }
    }
}

impl OutputStrategy for OPn {
    fn name(&self) -> String {
        format!("o-pn({}{})", self.n, if self.lenient { ",lenient" } else { "" })
    }

    fn next_output(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        if !view.outputs.is_empty() {
            return output_token(view, "0");
        }
        let values = letter_values(view, &view.inputs[1..]);
        match first_bad_jpair_in(&values) {
            Some((j, _, _)) => output_token(view, &j.to_string()),
            None if self.lenient => output_token(view, "0"),
            None if view.lookahead <= 1 << self.n => {
                Err(StrategyError::InsufficientLookahead { needed: (1 << self.n) + 1, available: view.lookahead })
            }
            None => Err(StrategyError::NoBadPair),
        }
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        Some(vec![u64::from(!view.outputs.is_empty())])
    }
}

/// Picks `β(0)` as the most frequent letter of the buffered `α(1)…`
/// (smallest on ties), then plays output `0` forever.
#[derive(Debug, Clone)]
pub struct GreedyPnOutput {
    n: usize,
}

impl GreedyPnOutput {
    pub fn new(n: usize) -> Self {
        GreedyPnOutput { n }
    }
}

impl OutputStrategy for GreedyPnOutput {
    fn name(&self) -> String {
        format!("greedy-pn({})", self.n)
    }

    fn next_output(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        if !view.outputs.is_empty() {
            return output_token(view, "0");
        }
        let mut count = vec![0usize; self.n];
        for v in letter_values(view, &view.inputs[1..]) {
            if v < self.n {
                count[v] += 1;
            }
        }
        let best = (0..self.n).max_by_key(|&j| (count[j], std::cmp::Reverse(j))).unwrap_or(0);
        output_token(view, &best.to_string())
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        Some(vec![u64::from(!view.outputs.is_empty())])
    }
}

/// Plays the sentinel `0`, then the bad-pair-free word of length `2ⁿ − 1`;
/// once `β(0) = j` is known it plays `(j+1) mod n` forever. Before that,
/// letters beyond the script are `0`.
#[derive(Debug, Clone)]
pub struct IPnSpoiler {
    n: usize,
    script: Vec<usize>,
}

impl IPnSpoiler {
    pub fn new(n: usize) -> Self {
        let mut script = vec![0];
        script.extend(free_letters(n.max(1)));
        IPnSpoiler { n, script }
    }

    fn revealed(&self, view: &PlayView) -> Option<usize> {
        view.outputs.first().map(|&y| view.io.outputs()[y].parse().unwrap_or(0))
    }
}

impl InputStrategy for IPnSpoiler {
    fn name(&self) -> String {
        format!("i-pn-spoiler({})", self.n)
    }

    fn next_input(&mut self, view: &PlayView) -> Result<usize, StrategyError> {
        let p = view.inputs.len();
        let v = match (self.script.get(p), self.revealed(view)) {
            (Some(&v), _) => v,
            (None, Some(j)) => (j + 1) % self.n,
            (None, None) => 0,
        };
        input_token(view, &v.to_string())
    }

    fn memory_key(&self, view: &PlayView) -> Option<Vec<u64>> {
        let p = view.inputs.len().min(self.script.len());
        Some(vec![p as u64, self.revealed(view).map_or(u64::MAX, |j| j as u64)])
    }
}
