//! Boolean formulas over state variables, used for Emerson-Lei conditions.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! iff     := implies ( "<->" iff )?
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := "!" unary | atom
//! atom    := "true" | "false" | ident | "\"" quoted "\"" | "(" iff ")"
//! ```
//!
//! Unquoted identifiers use the characters `[A-Za-z0-9_/<>⟨⟩-]` and never
//! contain the operator sequences `->` or `<->`. Anything else (parentheses,
//! commas, braces, keywords) must be quoted.
//!
//! `And`/`Or` are n-ary. The smart constructors keep formulas flat (no `And`
//! directly below an `And`), which makes printing and re-parsing an identity.

use std::fmt;

use thiserror::Error;

use crate::automaton::StateSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula<V = String> {
    True,
    False,
    Var(V),
    Not(Box<Formula<V>>),
    And(Vec<Formula<V>>),
    Or(Vec<Formula<V>>),
    Implies(Box<Formula<V>>, Box<Formula<V>>),
    Iff(Box<Formula<V>>, Box<Formula<V>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("formula syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

impl<V> Formula<V> {
    pub fn var(v: V) -> Self {
        Formula::Var(v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Self) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(parts: impl IntoIterator<Item = Self>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Formula::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::True,
            1 => flat.pop().unwrap(),
            _ => Formula::And(flat),
        }
    }

    pub fn or(parts: impl IntoIterator<Item = Self>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Formula::Or(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Formula::False,
            1 => flat.pop().unwrap(),
            _ => Formula::Or(flat),
        }
    }

    pub fn implies(lhs: Self, rhs: Self) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Self, rhs: Self) -> Self {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    /// Number of nodes of the equivalent binary syntax tree: every leaf and
    /// every unary or binary connective counts once, an n-ary `And`/`Or`
    /// counts as n-1 binary connectives.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Var(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.len().saturating_sub(1).max(usize::from(fs.is_empty()))
                    + fs.iter().map(Formula::size).sum::<usize>()
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn eval(&self, truth: &impl Fn(&V) -> bool) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Var(v) => truth(v),
            Formula::Not(f) => !f.eval(truth),
            Formula::And(fs) => fs.iter().all(|f| f.eval(truth)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(truth)),
            Formula::Implies(a, b) => !a.eval(truth) || b.eval(truth),
            Formula::Iff(a, b) => a.eval(truth) == b.eval(truth),
        }
    }

    pub fn try_map_vars<W, E>(&self, f: &mut impl FnMut(&V) -> Result<W, E>) -> Result<Formula<W>, E> {
        Ok(match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Var(v) => Formula::Var(f(v)?),
            Formula::Not(g) => Formula::Not(Box::new(g.try_map_vars(f)?)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.try_map_vars(f)).collect::<Result<_, _>>()?),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.try_map_vars(f)).collect::<Result<_, _>>()?),
            Formula::Implies(a, b) => {
                Formula::Implies(Box::new(a.try_map_vars(f)?), Box::new(b.try_map_vars(f)?))
            }
            Formula::Iff(a, b) => Formula::Iff(Box::new(a.try_map_vars(f)?), Box::new(b.try_map_vars(f)?)),
        })
    }

    pub fn map_vars<W>(&self, mut f: impl FnMut(&V) -> W) -> Formula<W> {
        self.try_map_vars::<W, std::convert::Infallible>(&mut |v| Ok(f(v)))
            .unwrap_or_else(|e| match e {})
    }

    /// Replaces every variable by a formula, re-flattening through the smart
    /// constructors.
    pub fn substitute<W>(&self, f: &mut impl FnMut(&V) -> Formula<W>) -> Formula<W> {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Var(v) => f(v),
            Formula::Not(g) => Formula::not(g.substitute(f)),
            Formula::And(gs) => Formula::and(gs.iter().map(|g| g.substitute(f)).collect::<Vec<_>>()),
            Formula::Or(gs) => Formula::or(gs.iter().map(|g| g.substitute(f)).collect::<Vec<_>>()),
            Formula::Implies(a, b) => Formula::implies(a.substitute(f), b.substitute(f)),
            Formula::Iff(a, b) => Formula::iff(a.substitute(f), b.substitute(f)),
        }
    }

    pub fn vars(&self) -> Vec<&V> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a V>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Var(v) => out.push(v),
            Formula::Not(g) => g.collect_vars(out),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.collect_vars(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(_) => 3,
            Formula::And(_) => 4,
            Formula::Not(_) => 5,
            Formula::True | Formula::False | Formula::Var(_) => 6,
        }
    }
}

impl Formula<usize> {
    /// Truth value under the assignment mapping exactly the members of `set`
    /// to true.
    pub fn eval_set(&self, set: &StateSet) -> bool {
        self.eval(&|q: &usize| set.contains(*q))
    }
}

impl Formula<String> {
    /// Resolves variable names against a lookup, failing on the first name
    /// the lookup does not know.
    pub fn resolve(&self, lookup: impl Fn(&str) -> Option<usize>) -> Result<Formula<usize>, FormulaError> {
        self.try_map_vars(&mut |name: &String| {
            lookup(name).ok_or_else(|| FormulaError::UnknownVariable(name.clone()))
        })
    }

    /// Evaluates against named states. `universe` is the set of known names;
    /// members of `assignment` are true and everything else false.
    pub fn eval_named(&self, universe: &[&str], assignment: &[&str]) -> Result<bool, FormulaError> {
        for v in self.vars() {
            if !universe.contains(&v.as_str()) {
                return Err(FormulaError::UnknownVariable(v.clone()));
            }
        }
        for a in assignment {
            if !universe.contains(a) {
                return Err(FormulaError::UnknownVariable((*a).to_string()));
            }
        }
        Ok(self.eval(&|v: &String| assignment.contains(&v.as_str())))
    }
}

impl std::str::FromStr for Formula<String> {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

const KEYWORDS: [&str; 2] = ["true", "false"];

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '/' | '<' | '>' | '⟨' | '⟩' | '-')
}

fn starts_with_operator(s: &str) -> bool {
    s.starts_with("->") || s.starts_with("<->")
}

/// Whether `name` can be printed without quotes.
pub fn is_plain_identifier(name: &str) -> bool {
    if name.is_empty() || KEYWORDS.contains(&name) || !name.chars().all(is_ident_char) {
        return false;
    }
    !name.char_indices().any(|(i, _)| starts_with_operator(&name[i..]))
}

pub fn quote_identifier(name: &str) -> String {
    if is_plain_identifier(name) {
        name.to_string()
    } else {
        format!("\"{name}\"")
    }
}

impl<V: fmt::Display> Formula<V> {
    fn write_at(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let parens = self.precedence() < ctx;
        if parens {
            f.write_str("(")?;
        }
        match self {
            Formula::True => f.write_str("true")?,
            Formula::False => f.write_str("false")?,
            Formula::Var(v) => f.write_str(&quote_identifier(&v.to_string()))?,
            Formula::Not(g) => {
                f.write_str("!")?;
                g.write_at(f, 5)?;
            }
            Formula::And(gs) | Formula::Or(gs) => {
                let (op, child_ctx) = if matches!(self, Formula::And(_)) { (" & ", 4) } else { (" | ", 3) };
                if gs.is_empty() {
                    f.write_str(if matches!(self, Formula::And(_)) { "true" } else { "false" })?;
                }
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    g.write_at(f, child_ctx)?;
                }
            }
            Formula::Implies(a, b) => {
                a.write_at(f, 3)?;
                f.write_str(" -> ")?;
                b.write_at(f, 2)?;
            }
            Formula::Iff(a, b) => {
                a.write_at(f, 2)?;
                f.write_str(" <-> ")?;
                b.write_at(f, 1)?;
            }
        }
        if parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl<V: fmt::Display> fmt::Display for Formula<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Not,
    And,
    Or,
    Implies,
    Iff,
    Open,
    Close,
    True,
    False,
    Ident(String),
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, FormulaError> {
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < input.len() {
        let rest = &input[i..];
        let c = rest.chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        let (tok, len) = if rest.starts_with("<->") {
            (Token::Iff, 3)
        } else if rest.starts_with("->") {
            (Token::Implies, 2)
        } else {
            match c {
                '!' => (Token::Not, 1),
                '&' => (Token::And, 1),
                '|' => (Token::Or, 1),
                '(' => (Token::Open, 1),
                ')' => (Token::Close, 1),
                '"' => {
                    let end = rest[1..].find('"').ok_or(FormulaError::Syntax {
                        offset: i,
                        message: "unterminated quoted identifier".into(),
                    })?;
                    if end == 0 {
                        return Err(FormulaError::Syntax { offset: i, message: "empty identifier".into() });
                    }
                    (Token::Ident(rest[1..1 + end].to_string()), end + 2)
                }
                c if is_ident_char(c) => {
                    let mut len = 0;
                    for (j, ch) in rest.char_indices() {
                        if !is_ident_char(ch) || starts_with_operator(&rest[j..]) {
                            break;
                        }
                        len = j + ch.len_utf8();
                    }
                    let word = &rest[..len];
                    let tok = match word {
                        "true" => Token::True,
                        "false" => Token::False,
                        _ => Token::Ident(word.to_string()),
                    };
                    (tok, len)
                }
                other => {
                    return Err(FormulaError::Syntax { offset: i, message: format!("unexpected character `{other}`") })
                }
            }
        };
        tokens.push((i, tok));
        i += len;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn error(&self, message: impl Into<String>) -> FormulaError {
        FormulaError::Syntax { offset: self.offset(), message: message.into() }
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.implies()?;
        if self.eat(&Token::Iff) {
            Ok(Formula::iff(lhs, self.iff()?))
        } else {
            Ok(lhs)
        }
    }

    fn implies(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.or()?;
        if self.eat(&Token::Implies) {
            Ok(Formula::implies(lhs, self.implies()?))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut parts = vec![self.and()?];
        while self.eat(&Token::Or) {
            parts.push(self.and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::or(parts) })
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut parts = vec![self.unary()?];
        while self.eat(&Token::And) {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::and(parts) })
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        if self.eat(&Token::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        let tok = self.peek().cloned().ok_or_else(|| self.error("unexpected end of formula"))?;
        self.pos += 1;
        match tok {
            Token::True => Ok(Formula::True),
            Token::False => Ok(Formula::False),
            Token::Ident(name) => Ok(Formula::Var(name)),
            Token::Open => {
                let inner = self.iff()?;
                if !self.eat(&Token::Close) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("unexpected token {other:?}")))
            }
        }
    }
}

pub fn parse(input: &str) -> Result<Formula, FormulaError> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0, end: input.len() };
    let f = p.iff()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}
