//! Generators for the gadget automata and automaton families.

mod addrcheck;
mod adder;
mod bitstore;
mod copycheck;
mod guessbit;
mod pn;
mod superblock;
mod sumpair;

pub use addrcheck::addr_update_checker;
pub use adder::{add_gadget, adder_state};
pub use bitstore::{bit_store, bit_state};
pub use copycheck::copy_check;
pub use guessbit::{guess_bit, guess_bit_records};
pub use pn::{pn_explicit_wdma, pn_reach};
pub use superblock::{superblock_decode, superblock_encode};
pub use sumpair::{
    sum_pair_automaton, sum_pair_letter, sum_pair_semantic_accepts, sum_pair_split_letter, CarryCheck, SUM_PAIR_INPUTS,
    SUM_PAIR_OUTPUTS,
};

use thiserror::Error;

use crate::automaton::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("{family}: n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { family: &'static str, n: usize, min: usize, max: usize },
    #[error("superblock value {value} does not fit in 2^{bits} bits")]
    ValueTooLarge { value: u64, bits: usize },
    #[error("malformed superblock word: block {block}: {message}")]
    Decode { block: usize, message: String },
}

pub(crate) fn check_range(family: &'static str, n: usize, min: usize, max: usize) -> Result<(), GadgetError> {
    if n < min || n > max {
        return Err(GadgetError::OutOfRange { family, n, min, max });
    }
    Ok(())
}

/// `⟨i/b⟩`, optionally prefixed with a gadget name.
pub(crate) fn cell(prefix: &str, i: usize, b: usize) -> String {
    format!("{prefix}⟨{i}/{b}⟩")
}

pub(crate) fn binary_pairs() -> Vec<Letter> {
    let mut v = Vec::new();
    for i in ["0", "1"] {
        for o in ["0", "1"] {
            v.push(Letter::pair(i, o));
        }
    }
    v
}

/// Upper bound on n accepted by every generator that has no tighter limit.
pub(crate) const MAX_N: usize = 1 << 16;
