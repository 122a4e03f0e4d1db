//! ω-automata: states, letters, transition relation and acceptance.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::acceptance::{Acceptance, WeakMullerCondition};
use crate::formula::{Formula, FormulaError};

pub type StateId = usize;
pub type LetterId = usize;

/// A set of states as a fixed-width bit vector indexed by state order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StateSet(FixedBitSet);

impl StateSet {
    pub fn empty(width: usize) -> Self {
        StateSet(FixedBitSet::with_capacity(width))
    }

    pub fn singleton(width: usize, q: StateId) -> Self {
        let mut s = Self::empty(width);
        s.insert(q);
        s
    }

    pub fn from_states(width: usize, states: impl IntoIterator<Item = StateId>) -> Self {
        let mut s = Self::empty(width);
        for q in states {
            s.insert(q);
        }
        s
    }

    pub fn full(width: usize) -> Self {
        Self::from_states(width, 0..width)
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, q: StateId) {
        self.0.insert(q);
    }

    /// Returns a copy with `q` added.
    pub fn with(&self, q: StateId) -> Self {
        let mut s = self.clone();
        s.insert(q);
        s
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.contains(q)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        self.0.union_with(&other.0);
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.ones()
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A letter: a plain token, or an (input, output) pair of a product alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Plain(String),
    Pair(String, String),
}

impl Letter {
    pub fn plain(t: impl Into<String>) -> Self {
        Letter::Plain(t.into())
    }

    pub fn pair(i: impl Into<String>, o: impl Into<String>) -> Self {
        Letter::Pair(i.into(), o.into())
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Letter::Pair(..))
    }

    fn tokens(&self) -> Vec<&str> {
        match self {
            Letter::Plain(t) => vec![t],
            Letter::Pair(a, b) => vec![a, b],
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Plain(t) => f.write_str(t),
            Letter::Pair(a, b) => write!(f, "{a},{b}"),
        }
    }
}

pub fn valid_token(t: &str) -> bool {
    !t.is_empty() && !t.chars().any(|c| c.is_whitespace() || c == ',' || c == '"' || c == '\'')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("invalid letter token `{0}`")]
    InvalidToken(String),
    #[error("alphabet mixes plain letters and pairs")]
    MixedArity,
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("invalid state name `{0}`")]
    InvalidStateName(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("letter index {0} out of range")]
    LetterOutOfRange(usize),
    #[error("automaton has no states")]
    NoStates,
    #[error("duplicate transition ({0}, {1}, {2})")]
    DuplicateTransition(String, String, String),
    #[error("automaton is not deterministic: state `{state}` on `{letter}` has {count} successors")]
    NotDeterministic { state: String, letter: String, count: usize },
    #[error("parity coloring does not cover state `{0}`")]
    MissingColor(String),
    #[error("parity coloring has {got} entries for {expected} states")]
    ColoringSize { expected: usize, got: usize },
    #[error("explicit weak Muller condition lists a set twice")]
    DuplicateMullerSet,
    #[error("acceptance references a set of width {got}, automaton has {expected} states")]
    SetWidth { expected: usize, got: usize },
    #[error("acceptance formula: {0}")]
    Formula(#[from] FormulaError),
    #[error("formula variable {0} out of range")]
    FormulaVarOutOfRange(usize),
}

/// An ω-automaton `(Q, Σ, q_I, Δ, Acc)`.
///
/// The transition relation is stored as a successor table indexed by
/// `(state, letter)`; each entry is sorted and duplicate free.
#[derive(Debug, Clone, PartialEq)]
pub struct Automaton {
    states: Vec<String>,
    alphabet: Vec<Letter>,
    initial: StateId,
    successors: Vec<Vec<StateId>>,
    acceptance: Acceptance,
    deterministic: bool,
}

fn validate_alphabet(alphabet: &[Letter]) -> Result<(), AutomatonError> {
    let first = alphabet.first().ok_or(AutomatonError::EmptyAlphabet)?;
    let mut seen = HashSet::new();
    for l in alphabet {
        if l.is_pair() != first.is_pair() {
            return Err(AutomatonError::MixedArity);
        }
        for t in l.tokens() {
            if !valid_token(t) {
                return Err(AutomatonError::InvalidToken(t.to_string()));
            }
        }
        if !seen.insert(l) {
            return Err(AutomatonError::DuplicateLetter(l.to_string()));
        }
    }
    Ok(())
}

fn valid_state_name(name: &str) -> bool {
    !name.is_empty() && !name.contains('"') && !name.chars().any(char::is_control)
}

impl Automaton {
    /// Assembles and validates an automaton from raw parts.
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<Letter>,
        initial: StateId,
        transitions: impl IntoIterator<Item = (StateId, LetterId, StateId)>,
        acceptance: Acceptance,
    ) -> Result<Self, AutomatonError> {
        validate_alphabet(&alphabet)?;
        if states.is_empty() {
            return Err(AutomatonError::NoStates);
        }
        let mut seen = HashSet::new();
        for s in &states {
            if !valid_state_name(s) {
                return Err(AutomatonError::InvalidStateName(s.clone()));
            }
            if !seen.insert(s.as_str()) {
                return Err(AutomatonError::DuplicateState(s.clone()));
            }
        }
        let n = states.len();
        let m = alphabet.len();
        if initial >= n {
            return Err(AutomatonError::StateOutOfRange(initial));
        }
        let mut successors = vec![Vec::new(); n * m];
        for (p, a, q) in transitions {
            if p >= n {
                return Err(AutomatonError::StateOutOfRange(p));
            }
            if q >= n {
                return Err(AutomatonError::StateOutOfRange(q));
            }
            if a >= m {
                return Err(AutomatonError::LetterOutOfRange(a));
            }
            successors[p * m + a].push(q);
        }
        for s in &mut successors {
            s.sort_unstable();
            s.dedup();
        }
        let deterministic = successors.iter().all(|s| s.len() == 1);
        let a = Automaton { states, alphabet, initial, successors, acceptance, deterministic };
        a.validate_acceptance()?;
        Ok(a)
    }

    fn validate_acceptance(&self) -> Result<(), AutomatonError> {
        let n = self.states.len();
        let check_width = |s: &StateSet| {
            if s.width() != n {
                Err(AutomatonError::SetWidth { expected: n, got: s.width() })
            } else {
                Ok(())
            }
        };
        match &self.acceptance {
            Acceptance::Safety(f) | Acceptance::Reachability(f) => check_width(f)?,
            Acceptance::Parity(colors) => {
                if colors.len() != n {
                    return Err(AutomatonError::ColoringSize { expected: n, got: colors.len() });
                }
            }
            Acceptance::WeakMuller(WeakMullerCondition::Explicit(sets)) => {
                let mut seen = HashSet::new();
                for s in sets {
                    check_width(s)?;
                    if !seen.insert(s) {
                        return Err(AutomatonError::DuplicateMullerSet);
                    }
                }
            }
            Acceptance::WeakMuller(WeakMullerCondition::EmersonLei(f)) => {
                if let Some(&&v) = f.vars().iter().find(|&&&v| v >= n) {
                    return Err(AutomatonError::FormulaVarOutOfRange(v));
                }
            }
        }
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn letter_id(&self, letter: &Letter) -> Option<LetterId> {
        self.alphabet.iter().position(|l| l == letter)
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    pub fn is_product_alphabet(&self) -> bool {
        self.alphabet[0].is_pair()
    }

    pub fn successors(&self, q: StateId, a: LetterId) -> &[StateId] {
        &self.successors[q * self.alphabet.len() + a]
    }

    /// The unique successor; only meaningful for deterministic automata.
    pub fn next(&self, q: StateId, a: LetterId) -> StateId {
        self.successors(q, a)[0]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, LetterId, StateId)> + '_ {
        let m = self.alphabet.len();
        self.successors
            .iter()
            .enumerate()
            .flat_map(move |(i, succ)| succ.iter().map(move |&q| (i / m, i % m, q)))
    }

    pub fn num_transitions(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// Whether `q` loops to itself on every letter.
    pub fn is_absorbing(&self, q: StateId) -> bool {
        (0..self.alphabet.len()).all(|a| self.successors(q, a) == [q])
    }

    /// Size as defined for weak Muller automata: states plus the size of
    /// the condition representation; just the state count otherwise.
    pub fn size(&self) -> usize {
        self.num_states()
            + match &self.acceptance {
                Acceptance::WeakMuller(WeakMullerCondition::Explicit(sets)) => sets.len(),
                Acceptance::WeakMuller(WeakMullerCondition::EmersonLei(f)) => f.size(),
                _ => 0,
            }
    }

    pub fn with_acceptance(&self, acceptance: Acceptance) -> Result<Self, AutomatonError> {
        let a = Automaton { acceptance, ..self.clone() };
        a.validate_acceptance()?;
        Ok(a)
    }

    pub fn require_deterministic(&self) -> Result<(), AutomatonError> {
        if self.deterministic {
            return Ok(());
        }
        let m = self.alphabet.len();
        let (i, s) = self.successors.iter().enumerate().find(|(_, s)| s.len() != 1).unwrap();
        Err(AutomatonError::NotDeterministic {
            state: self.states[i / m].clone(),
            letter: self.alphabet[i % m].to_string(),
            count: s.len(),
        })
    }

    /// Runs a deterministic automaton on a finite word, returning the final
    /// state and the occurrence set of the run prefix (including `q_I`).
    pub fn run_det(&self, word: &[LetterId]) -> Result<(StateId, StateSet), AutomatonError> {
        self.require_deterministic()?;
        let mut q = self.initial;
        let mut occ = StateSet::singleton(self.num_states(), q);
        for &a in word {
            if a >= self.num_letters() {
                return Err(AutomatonError::LetterOutOfRange(a));
            }
            q = self.next(q, a);
            occ.insert(q);
        }
        Ok((q, occ))
    }

    /// All pairs (current state, occurrence set) reachable by some run on
    /// `word`. Works for deterministic and non-deterministic automata.
    pub fn run_configurations(&self, word: &[LetterId]) -> Result<BTreeSet<(StateId, StateSet)>, AutomatonError> {
        let mut current = BTreeSet::new();
        current.insert((self.initial, StateSet::singleton(self.num_states(), self.initial)));
        for &a in word {
            if a >= self.num_letters() {
                return Err(AutomatonError::LetterOutOfRange(a));
            }
            current = current
                .iter()
                .flat_map(|(q, occ)| self.successors(*q, a).iter().map(move |&r| (r, occ.with(r))))
                .collect();
        }
        Ok(current)
    }

    /// Resolves a letter written as `tok` or `in,out`.
    pub fn parse_letter(&self, text: &str) -> Result<LetterId, AutomatonError> {
        let letter = match text.split_once(',') {
            Some((a, b)) => Letter::pair(a, b),
            None => Letter::plain(text),
        };
        self.letter_id(&letter).ok_or_else(|| AutomatonError::UnknownLetter(text.to_string()))
    }

    /// Parses a whitespace-separated word. For plain alphabets made of
    /// single-character tokens, a chunk that is not itself a letter is split
    /// into characters, so `0110` reads as four letters.
    pub fn parse_word(&self, text: &str) -> Result<Vec<LetterId>, AutomatonError> {
        let single_chars = self
            .alphabet
            .iter()
            .all(|l| matches!(l, Letter::Plain(t) if t.chars().count() == 1));
        let mut word = Vec::new();
        for chunk in text.split_whitespace() {
            match self.parse_letter(chunk) {
                Ok(a) => word.push(a),
                Err(e) if !single_chars => return Err(e),
                Err(_) => {
                    for c in chunk.chars() {
                        word.push(self.parse_letter(&c.to_string())?);
                    }
                }
            }
        }
        Ok(word)
    }

    /// Evaluates a named formula against a named assignment, both checked
    /// against this automaton's states.
    pub fn eval_formula(&self, formula: &Formula, assignment: &[&str]) -> Result<bool, AutomatonError> {
        let resolved = formula.resolve(|s| self.state_id(s))?;
        let mut set = StateSet::empty(self.num_states());
        for name in assignment {
            set.insert(self.state_id(name).ok_or_else(|| AutomatonError::UnknownState(name.to_string()))?);
        }
        Ok(resolved.eval_set(&set))
    }

    pub fn state_set_names(&self, set: &StateSet) -> Vec<&str> {
        set.iter().map(|q| self.states[q].as_str()).collect()
    }

    pub fn state_set(&self, names: &[&str]) -> Result<StateSet, AutomatonError> {
        let mut set = StateSet::empty(self.num_states());
        for n in names {
            set.insert(self.state_id(n).ok_or_else(|| AutomatonError::UnknownState(n.to_string()))?);
        }
        Ok(set)
    }
}

/// Incremental construction by name, used by the generators.
#[derive(Debug, Clone)]
pub struct AutomatonBuilder {
    states: Vec<String>,
    index: HashMap<String, StateId>,
    alphabet: Vec<Letter>,
    transitions: Vec<(StateId, LetterId, StateId)>,
}

impl AutomatonBuilder {
    pub fn new(alphabet: Vec<Letter>) -> Self {
        AutomatonBuilder { states: Vec::new(), index: HashMap::new(), alphabet, transitions: Vec::new() }
    }

    /// Returns the id of `name`, creating the state on first use.
    pub fn state(&mut self, name: impl Into<String>) -> StateId {
        let name = name.into();
        if let Some(&q) = self.index.get(&name) {
            return q;
        }
        let q = self.states.len();
        self.index.insert(name.clone(), q);
        self.states.push(name);
        q
    }

    pub fn lookup(&self, name: &str) -> Option<StateId> {
        self.index.get(name).copied()
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn edge(&mut self, from: StateId, letter: LetterId, to: StateId) {
        self.transitions.push((from, letter, to));
    }

    pub fn build(self, initial: StateId, acceptance: Acceptance) -> Result<Automaton, AutomatonError> {
        Automaton::new(self.states, self.alphabet, initial, self.transitions, acceptance)
    }
}
