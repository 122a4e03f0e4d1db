//! JSON document format for automata.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "states": ["q0", "q1"],
//!   "initial": "q0",
//!   "alphabet": [["0", "0"], ["0", "1"]],
//!   "transitions": [["q0", ["0", "1"], "q1"]],
//!   "acceptance": {"type": "weak-muller", "repr": "emerson-lei", "formula": "q0 & !q1"},
//!   "deterministic": true
//! }
//! ```
//!
//! Letters are tokens or two-element token lists; in transitions a pair may
//! also be written `"in,out"`. `deterministic` is optional on input; when it
//! is `true` the transition relation must be a total function.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::acceptance::{Acceptance, WeakMullerCondition};
use crate::automaton::{Automaton, AutomatonError, Letter};
use crate::formula::{self, FormulaError};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed automaton document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u64),
    #[error("{field}: unknown state `{name}`")]
    UnknownState { field: String, name: String },
    #[error("{field}: unknown letter `{letter}`")]
    UnknownLetter { field: String, letter: String },
    #[error("transitions: duplicate transition [{0}, {1}, {2}]")]
    DuplicateTransition(String, String, String),
    #[error("acceptance.colors: missing color for state `{0}`")]
    MissingColor(String),
    #[error("acceptance: repr `{repr}` requires field `{field}`")]
    MissingReprField { repr: &'static str, field: &'static str },
    #[error("acceptance.formula: {0}")]
    Formula(#[from] FormulaError),
    #[error("invalid automaton: {0}")]
    Validation(#[from] AutomatonError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum LetterDoc {
    Plain(String),
    Pair([String; 2]),
}

impl LetterDoc {
    fn to_letter(&self) -> Letter {
        match self {
            LetterDoc::Plain(t) => match t.split_once(',') {
                Some((i, o)) => Letter::pair(i, o),
                None => Letter::plain(t.as_str()),
            },
            LetterDoc::Pair([i, o]) => Letter::pair(i.as_str(), o.as_str()),
        }
    }

    fn from_letter(l: &Letter) -> Self {
        match l {
            Letter::Plain(t) => LetterDoc::Plain(t.clone()),
            Letter::Pair(i, o) => LetterDoc::Pair([i.clone(), o.clone()]),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum Repr {
    Explicit,
    EmersonLei,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
enum AcceptanceDoc {
    Safety {
        #[serde(rename = "F")]
        f: Vec<String>,
    },
    Reachability {
        #[serde(rename = "F")]
        f: Vec<String>,
    },
    Parity {
        colors: BTreeMap<String, u32>,
    },
    WeakMuller {
        repr: Repr,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sets: Option<Vec<Vec<String>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        formula: Option<String>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    format_version: u64,
    states: Vec<String>,
    initial: String,
    alphabet: Vec<LetterDoc>,
    transitions: Vec<(String, LetterDoc, String)>,
    acceptance: AcceptanceDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deterministic: Option<bool>,
}

pub fn parse_automaton(text: &str) -> Result<Automaton, JsonError> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(JsonError::Version(doc.format_version));
    }
    let state = |field: &str, name: &str| {
        doc.states.iter().position(|s| s == name).ok_or_else(|| JsonError::UnknownState {
            field: field.to_string(),
            name: name.to_string(),
        })
    };
    let alphabet: Vec<Letter> = doc.alphabet.iter().map(LetterDoc::to_letter).collect();
    let initial = state("initial", &doc.initial)?;
    let mut seen = HashSet::new();
    let mut transitions = Vec::with_capacity(doc.transitions.len());
    for (src, letter, tgt) in &doc.transitions {
        let l = letter.to_letter();
        let p = state("transitions", src)?;
        let q = state("transitions", tgt)?;
        let a = alphabet.iter().position(|x| *x == l).ok_or_else(|| JsonError::UnknownLetter {
            field: "transitions".into(),
            letter: l.to_string(),
        })?;
        if !seen.insert((p, a, q)) {
            return Err(JsonError::DuplicateTransition(src.clone(), l.to_string(), tgt.clone()));
        }
        transitions.push((p, a, q));
    }
    let n = doc.states.len();
    let set = |field: &str, names: &[String]| -> Result<_, JsonError> {
        let mut s = crate::automaton::StateSet::empty(n);
        for name in names {
            s.insert(state(field, name)?);
        }
        Ok(s)
    };
    let acceptance = match &doc.acceptance {
        AcceptanceDoc::Safety { f } => Acceptance::Safety(set("acceptance.F", f)?),
        AcceptanceDoc::Reachability { f } => Acceptance::Reachability(set("acceptance.F", f)?),
        AcceptanceDoc::Parity { colors } => {
            for name in colors.keys() {
                state("acceptance.colors", name)?;
            }
            let mut out = Vec::with_capacity(n);
            for s in &doc.states {
                out.push(*colors.get(s).ok_or_else(|| JsonError::MissingColor(s.clone()))?);
            }
            Acceptance::Parity(out)
        }
        AcceptanceDoc::WeakMuller { repr: Repr::Explicit, sets, .. } => {
            let sets = sets.as_ref().ok_or(JsonError::MissingReprField { repr: "explicit", field: "sets" })?;
            let sets = sets.iter().map(|s| set("acceptance.sets", s)).collect::<Result<_, _>>()?;
            Acceptance::WeakMuller(WeakMullerCondition::Explicit(sets))
        }
        AcceptanceDoc::WeakMuller { repr: Repr::EmersonLei, formula, .. } => {
            let text = formula.as_ref().ok_or(JsonError::MissingReprField { repr: "emerson-lei", field: "formula" })?;
            let f = formula::parse(text)?.resolve(|s| doc.states.iter().position(|x| x == s))?;
            Acceptance::WeakMuller(WeakMullerCondition::EmersonLei(f))
        }
    };
    let a = Automaton::new(doc.states.clone(), alphabet, initial, transitions, acceptance)?;
    if doc.deterministic == Some(true) {
        a.require_deterministic()?;
    }
    Ok(a)
}

fn document(a: &Automaton) -> Document {
    let names = |s: &crate::automaton::StateSet| a.state_set_names(s).into_iter().map(String::from).collect();
    let acceptance = match a.acceptance() {
        Acceptance::Safety(f) => AcceptanceDoc::Safety { f: names(f) },
        Acceptance::Reachability(f) => AcceptanceDoc::Reachability { f: names(f) },
        Acceptance::Parity(colors) => AcceptanceDoc::Parity {
            colors: a.states().iter().cloned().zip(colors.iter().copied()).collect(),
        },
        Acceptance::WeakMuller(WeakMullerCondition::Explicit(sets)) => AcceptanceDoc::WeakMuller {
            repr: Repr::Explicit,
            sets: Some(sets.iter().map(names).collect()),
            formula: None,
        },
        Acceptance::WeakMuller(WeakMullerCondition::EmersonLei(f)) => AcceptanceDoc::WeakMuller {
            repr: Repr::EmersonLei,
            sets: None,
            formula: Some(f.map_vars(|&q| a.state_name(q).to_string()).to_string()),
        },
    };
    Document {
        format_version: FORMAT_VERSION,
        states: a.states().to_vec(),
        initial: a.state_name(a.initial()).to_string(),
        alphabet: a.alphabet().iter().map(LetterDoc::from_letter).collect(),
        transitions: a
            .transitions()
            .map(|(p, l, q)| {
                (a.state_name(p).to_string(), LetterDoc::from_letter(&a.alphabet()[l]), a.state_name(q).to_string())
            })
            .collect(),
        acceptance,
        deterministic: Some(a.is_deterministic()),
    }
}

/// Pretty-printed JSON document; `parse_automaton` inverts it.
pub fn serialize_automaton(a: &Automaton) -> String {
    let mut s = serde_json::to_string_pretty(&document(a)).expect("automaton documents always serialize");
    s.push('\n');
    s
}
