//! Hanoi Omega-Automata (HOA v1) text for parity automata.
//!
//! Letters are encoded in binary over `⌈log₂ |Σ|⌉` atomic propositions
//! `p0, p1, …` (bit j of the letter index is `p_j`). The original letter
//! tokens are kept in the custom header `letters:` so that [`parse_hoa`] can
//! restore the alphabet. Acceptance is state based with one set per color.

use std::fmt::Write as _;

use thiserror::Error;

use crate::acceptance::Acceptance;
use crate::automaton::{Automaton, AutomatonError, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoaError {
    #[error("HOA export needs parity acceptance, got {0}")]
    NotParity(&'static str),
    #[error("HOA line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Number of atomic propositions needed for `m` letters.
pub fn num_aps(m: usize) -> usize {
    let mut k = 0;
    while (1usize << k) < m {
        k += 1;
    }
    k
}

/// The canonical `parity max even` acceptance formula over sets
/// `0..num_sets`.
pub fn parity_max_even_formula(num_sets: u32) -> String {
    fn go(c: u32) -> String {
        let own = if c % 2 == 0 { format!("Inf({c})") } else { format!("Fin({c})") };
        if c == 0 {
            return own;
        }
        let op = if c % 2 == 0 { "|" } else { "&" };
        let rest = go(c - 1);
        if c == 1 {
            format!("{own} {op} {rest}")
        } else {
            format!("{own} {op} ({rest})")
        }
    }
    match num_sets {
        0 => "f".to_string(),
        n => go(n - 1),
    }
}

fn label(letter: usize, aps: usize) -> String {
    if aps == 0 {
        return "t".to_string();
    }
    (0..aps)
        .map(|j| if letter >> j & 1 == 1 { format!("{j}") } else { format!("!{j}") })
        .collect::<Vec<_>>()
        .join("&")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_hoa(a: &Automaton) -> Result<String, HoaError> {
    let colors = match a.acceptance() {
        Acceptance::Parity(c) => c,
        other => return Err(HoaError::NotParity(other.kind())),
    };
    let num_sets = colors.iter().max().map_or(1, |&m| m + 1);
    let aps = num_aps(a.num_letters());
    let mut out = String::new();
    writeln!(out, "HOA: v1").unwrap();
    writeln!(out, "States: {}", a.num_states()).unwrap();
    writeln!(out, "Start: {}", a.initial()).unwrap();
    write!(out, "AP: {aps}").unwrap();
    for j in 0..aps {
        write!(out, " \"p{j}\"").unwrap();
    }
    out.push('\n');
    write!(out, "letters:").unwrap();
    for l in a.alphabet() {
        write!(out, " {}", quote(&l.to_string())).unwrap();
    }
    out.push('\n');
    writeln!(out, "acc-name: parity max even {num_sets}").unwrap();
    writeln!(out, "Acceptance: {num_sets} {}", parity_max_even_formula(num_sets)).unwrap();
    write!(out, "properties: trans-labels explicit-labels state-acc").unwrap();
    if a.is_deterministic() {
        write!(out, " deterministic").unwrap();
    }
    out.push('\n');
    writeln!(out, "--BODY--").unwrap();
    for q in 0..a.num_states() {
        writeln!(out, "State: {q} {} {{{}}}", quote(a.state_name(q)), colors[q]).unwrap();
        for l in 0..a.num_letters() {
            for &r in a.successors(q, l) {
                writeln!(out, "[{}] {r}", label(l, aps)).unwrap();
            }
        }
    }
    writeln!(out, "--END--").unwrap();
    Ok(out)
}

struct Lexer<'a> {
    rest: &'a str,
}

impl<'a> Lexer<'a> {
    fn string(&mut self) -> Option<String> {
        let s = self.rest.trim_start();
        let mut chars = s.char_indices();
        if chars.next()?.1 != '"' {
            return None;
        }
        let mut out = String::new();
        let mut escaped = false;
        for (i, c) in chars {
            if escaped {
                out.push(c);
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == '"' {
                self.rest = &s[i + 1..];
                return Some(out);
            } else {
                out.push(c);
            }
        }
        None
    }

    fn word(&mut self) -> Option<&'a str> {
        let s = self.rest.trim_start();
        if s.is_empty() || s.starts_with('"') {
            return None;
        }
        let end = s.find(char::is_whitespace).unwrap_or(s.len());
        self.rest = &s[end..];
        Some(&s[..end])
    }
}

/// Reads back the HOA subset written by [`to_hoa`]: explicit binary labels,
/// state-based acceptance marks and the `letters:` header.
pub fn parse_hoa(text: &str) -> Result<Automaton, HoaError> {
    let err = |line: usize, message: &str| HoaError::Syntax { line: line + 1, message: message.to_string() };
    let lines: Vec<&str> = text.lines().collect();
    if lines.first().map(|l| l.trim()) != Some("HOA: v1") {
        return Err(err(0, "expected `HOA: v1`"));
    }
    let mut states = None;
    let mut start = None;
    let mut aps = None;
    let mut letters: Option<Vec<Letter>> = None;
    let mut i = 1;
    while i < lines.len() && lines[i].trim() != "--BODY--" {
        let line = lines[i];
        let (name, rest) = line.split_once(':').ok_or_else(|| err(i, "expected header item"))?;
        let mut lx = Lexer { rest };
        match name.trim() {
            "States" => states = lx.word().and_then(|w| w.parse::<usize>().ok()),
            "Start" => start = lx.word().and_then(|w| w.parse::<usize>().ok()),
            "AP" => {
                let k: usize = lx.word().and_then(|w| w.parse().ok()).ok_or_else(|| err(i, "bad AP count"))?;
                for _ in 0..k {
                    lx.string().ok_or_else(|| err(i, "missing AP name"))?;
                }
                aps = Some(k);
            }
            "letters" => {
                let mut ls = Vec::new();
                while let Some(s) = lx.string() {
                    ls.push(match s.split_once(',') {
                        Some((a, b)) => Letter::pair(a, b),
                        None => Letter::plain(s),
                    });
                }
                letters = Some(ls);
            }
            "acc-name" | "Acceptance" | "properties" | "name" | "tool" => {}
            other => {
                if other.starts_with(|c: char| c.is_ascii_uppercase()) {
                    return Err(err(i, &format!("unsupported header `{other}`")));
                }
            }
        }
        i += 1;
    }
    if i == lines.len() {
        return Err(err(i - 1, "missing --BODY--"));
    }
    let n = states.ok_or_else(|| err(0, "missing States"))?;
    let aps = aps.ok_or_else(|| err(0, "missing AP"))?;
    let letters = letters.unwrap_or_else(|| (0..1usize << aps).map(|v| Letter::plain(v.to_string())).collect());
    let mut names = vec![String::new(); n];
    let mut colors = vec![None; n];
    let mut transitions = Vec::new();
    let mut current = None;
    i += 1;
    while i < lines.len() && lines[i].trim() != "--END--" {
        let line = lines[i].trim();
        if let Some(rest) = line.strip_prefix("State:") {
            let mut lx = Lexer { rest };
            let q: usize = lx.word().and_then(|w| w.parse().ok()).filter(|&q| q < n).ok_or_else(|| err(i, "bad state index"))?;
            names[q] = lx.string().unwrap_or_else(|| q.to_string());
            let acc = lx.rest.trim();
            let c = acc
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .and_then(|s| s.trim().parse::<u32>().ok())
                .ok_or_else(|| err(i, "expected a single acceptance mark"))?;
            colors[q] = Some(c);
            current = Some(q);
        } else if let Some(rest) = line.strip_prefix('[') {
            let q = current.ok_or_else(|| err(i, "edge before State"))?;
            let (lab, tgt) = rest.split_once(']').ok_or_else(|| err(i, "unterminated label"))?;
            let r: usize = tgt.trim().parse().ok().filter(|&r| r < n).ok_or_else(|| err(i, "bad edge target"))?;
            let mut letter = 0usize;
            if lab.trim() != "t" {
                for lit in lab.split('&') {
                    let lit = lit.trim();
                    let (neg, idx) = match lit.strip_prefix('!') {
                        Some(s) => (true, s),
                        None => (false, lit),
                    };
                    let j: usize = idx.parse().ok().filter(|&j| j < aps).ok_or_else(|| err(i, "bad label literal"))?;
                    if !neg {
                        letter |= 1 << j;
                    }
                }
            }
            if letter >= letters.len() {
                return Err(err(i, "label encodes no letter"));
            }
            transitions.push((q, letter, r));
        } else if !line.is_empty() {
            return Err(err(i, "unexpected body line"));
        }
        i += 1;
    }
    if i == lines.len() {
        return Err(err(i - 1, "missing --END--"));
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(q, c)| c.ok_or_else(|| err(i, &format!("state {q} has no acceptance mark"))))
        .collect::<Result<Vec<_>, _>>()?;
    let start = start.ok_or_else(|| err(0, "missing Start"))?;
    Ok(Automaton::new(names, letters, start, transitions, Acceptance::Parity(colors))?)
}
