//! Bad j-pairs: two occurrences of `j` with only smaller letters between.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JpairError {
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("letter {letter} at position {pos} is not below {n}")]
    LetterOutOfRange { pos: usize, letter: usize, n: usize },
    #[error("j = {j} is not below {n}")]
    JOutOfRange { j: usize, n: usize },
    #[error("invalid ranked word `{0}`")]
    Parse(String),
    #[error("exhaustive verification is limited to n <= 3 (n^(2^n) words), got n = {0}; use sampling")]
    ExhaustiveTooLarge(usize),
}

/// A finite word over `{0, …, n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankedWord {
    n: usize,
    letters: Vec<usize>,
}

impl RankedWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, JpairError> {
        if n == 0 {
            return Err(JpairError::EmptyAlphabet);
        }
        if let Some((pos, &letter)) = letters.iter().enumerate().find(|(_, &l)| l >= n) {
            return Err(JpairError::LetterOutOfRange { pos, letter, n });
        }
        Ok(RankedWord { n, letters })
    }

    /// Parses digits (`"0102"`) or, for n > 10, whitespace-separated numbers.
    pub fn parse(n: usize, text: &str) -> Result<Self, JpairError> {
        let bad = || JpairError::Parse(text.to_string());
        let letters = if text.split_whitespace().count() > 1 || n > 10 {
            text.split_whitespace().map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        } else {
            text.trim().chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_, _>>()?
        };
        RankedWord::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for RankedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 10 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(usize::to_string).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

/// The first bad j-pair `(p, p')` of `w` in order of `p'`.
pub fn contains_bad_jpair(w: &RankedWord, j: usize) -> Result<Option<(usize, usize)>, JpairError> {
    if j >= w.n {
        return Err(JpairError::JOutOfRange { j, n: w.n });
    }
    let mut last = None;
    for (i, &x) in w.letters.iter().enumerate() {
        if x == j {
            if let Some(p) = last {
                return Ok(Some((p, i)));
            }
            last = Some(i);
        } else if x > j {
            last = None;
        }
    }
    Ok(None)
}

/// The bad pair `(j, p, p')` with the smallest `p'`, found in one pass.
///
/// The stack holds the positions that no later letter dominates, with
/// strictly decreasing letters from bottom to top. A new letter pops all
/// smaller entries; if the entry left on top carries the same letter, every
/// letter in between was smaller.
pub fn first_bad_jpair(w: &RankedWord) -> Option<(usize, usize, usize)> {
    first_bad_jpair_in(&w.letters)
}

pub(crate) fn first_bad_jpair_in(letters: &[usize]) -> Option<(usize, usize, usize)> {
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for (i, &x) in letters.iter().enumerate() {
        while stack.last().is_some_and(|&(l, _)| l < x) {
            stack.pop();
        }
        match stack.last() {
            Some(&(l, p)) if l == x => return Some((x, p, i)),
            _ => stack.push((x, i)),
        }
    }
    None
}

/// A word of length `2ⁿ − 1` without any bad pair: `w₁ = 0`,
/// `wₙ = wₙ₋₁ (n−1) wₙ₋₁`.
pub fn jpair_free_word(n: usize) -> Result<RankedWord, JpairError> {
    if n == 0 {
        return Err(JpairError::EmptyAlphabet);
    }
    Ok(RankedWord { n, letters: free_letters(n) })
}

pub(crate) fn free_letters(n: usize) -> Vec<usize> {
    let mut w = Vec::with_capacity((1usize << n) - 1);
    w.push(0);
    for k in 1..n {
        let prev = w.clone();
        w.push(k);
        w.extend_from_slice(&prev);
    }
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairBoundsReport {
    pub n: usize,
    pub mode: VerifyMode,
    /// Words of length 2ⁿ examined.
    pub checked: u64,
    /// How many of them contain a bad pair.
    pub with_pair: u64,
    pub free_word_len: usize,
    pub free_word_ok: bool,
    pub elapsed: Duration,
}

impl PairBoundsReport {
    pub fn passed(&self) -> bool {
        self.checked == self.with_pair && self.free_word_ok && self.free_word_len + 1 == 1 << self.n
    }
}

/// Checks both bounds for alphabet size `n`: every word of length `2ⁿ`
/// (all of them, or a random sample) has a bad pair, and
/// [`jpair_free_word`] has none.
pub fn verify_pair_bounds(n: usize, mode: VerifyMode) -> Result<PairBoundsReport, JpairError> {
    if n == 0 {
        return Err(JpairError::EmptyAlphabet);
    }
    let start = Instant::now();
    let len = 1usize << n;
    let (checked, with_pair) = match mode {
        VerifyMode::Exhaustive => {
            if n > 3 {
                return Err(JpairError::ExhaustiveTooLarge(n));
            }
            let mut word = vec![0usize; len];
            let mut checked = 0u64;
            let mut with_pair = 0u64;
            loop {
                checked += 1;
                with_pair += u64::from(first_bad_jpair_in(&word).is_some());
                // odometer increment
                let mut i = 0;
                while i < len && word[i] == n - 1 {
                    word[i] = 0;
                    i += 1;
                }
                if i == len {
                    break;
                }
                word[i] += 1;
            }
            (checked, with_pair)
        }
        VerifyMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut word = vec![0usize; len];
            let mut with_pair = 0u64;
            for _ in 0..count {
                for x in word.iter_mut() {
                    *x = rng.gen_range(0..n);
                }
                with_pair += u64::from(first_bad_jpair_in(&word).is_some());
            }
            (count as u64, with_pair)
        }
    };
    let free = free_letters(n);
    Ok(PairBoundsReport {
        n,
        mode,
        checked,
        with_pair,
        free_word_len: free.len(),
        free_word_ok: first_bad_jpair_in(&free).is_none(),
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> RankedWord {
        RankedWord::parse(n, s).unwrap()
    }

    #[test]
    fn single_letter_pairs() {
        assert_eq!(contains_bad_jpair(&w(2, "0110"), 1).unwrap(), Some((1, 2)));
        assert_eq!(contains_bad_jpair(&w(2, "010"), 0).unwrap(), None);
        assert_eq!(contains_bad_jpair(&w(1, "00"), 0).unwrap(), Some((0, 1)));
        assert_eq!(contains_bad_jpair(&w(2, "01"), 2), Err(JpairError::JOutOfRange { j: 2, n: 2 }));
    }

    #[test]
    fn first_pair_examples() {
        assert_eq!(first_bad_jpair(&w(2, "0101")), Some((1, 1, 3)));
        assert_eq!(first_bad_jpair(&w(2, "010")), None);
        assert_eq!(first_bad_jpair(&w(2, "")), None);
    }

    #[test]
    fn free_words() {
        assert_eq!(jpair_free_word(1).unwrap().to_string(), "0");
        assert_eq!(jpair_free_word(2).unwrap().to_string(), "010");
        assert_eq!(jpair_free_word(3).unwrap().to_string(), "0102010");
    }

    #[test]
    fn exhaustive_limit() {
        assert_eq!(verify_pair_bounds(4, VerifyMode::Exhaustive), Err(JpairError::ExhaustiveTooLarge(4)));
        let r = verify_pair_bounds(2, VerifyMode::Exhaustive).unwrap();
        assert_eq!((r.checked, r.with_pair), (16, 16));
    }

    #[test]
    fn parse_rejects_large_letters() {
        assert_eq!(
            RankedWord::parse(2, "012"),
            Err(JpairError::LetterOutOfRange { pos: 2, letter: 2, n: 2 })
        );
    }
}
