//! Golden HOA exports, each checked against a small HOA v1 grammar.
//! Run with `UPDATE_GOLDEN=1` to rewrite the files.

use std::path::PathBuf;

use delaygame::gadgets::{copy_check, pn_reach};
use delaygame::hoa::{parse_hoa, to_hoa};
use delaygame::translate::to_buchi_parity;
use delaygame::Automaton;

fn golden(name: &str, a: &Automaton) {
    let text = to_hoa(&to_buchi_parity(a).unwrap()).unwrap();
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(text, expected, "{name} differs from the golden file");
    if let Err(e) = validate(&expected) {
        panic!("{name}: {e}");
    }
    assert_eq!(parse_hoa(&expected).unwrap(), to_buchi_parity(a).unwrap());
}

#[test]
fn copy_check_export() {
    golden("copycheck1.hoa", &copy_check(1).unwrap());
}

#[test]
fn pn_export() {
    golden("pn2.hoa", &pn_reach(2).unwrap());
}

#[test]
fn validator_rejects_broken_documents() {
    let good = to_hoa(&to_buchi_parity(&copy_check(1).unwrap()).unwrap()).unwrap();
    assert!(validate(&good).is_ok());
    assert!(validate(&good.replace("--END--", "")).is_err());
    assert!(validate(&good.replace("Acceptance: 3 ", "Acceptance: 2 ")).is_err());
    assert!(validate(&good.replace("[!0&!1]", "[!0&&!1]")).is_err());
    assert!(validate(&good.replacen("States: ", "States: 9", 1)).is_err());
}

// Minimal HOA v1 grammar validator.

fn validate(text: &str) -> Result<(), String> {
    let mut lines = text.lines().enumerate().peekable();
    let (_, first) = lines.next().ok_or("empty document")?;
    if first != "HOA: v1" {
        return Err("first line must be `HOA: v1`".into());
    }
    let (mut states, mut aps, mut sets) = (None, None, None);
    let mut start_seen = false;
    loop {
        let (i, line) = lines.next().ok_or("missing --BODY--")?;
        if line == "--BODY--" {
            break;
        }
        let (name, rest) = line.split_once(':').ok_or(format!("line {}: not a header item", i + 1))?;
        if !name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(format!("line {}: bad header name `{name}`", i + 1));
        }
        let toks = tokens(rest).map_err(|e| format!("line {}: {e}", i + 1))?;
        match name {
            "States" => states = Some(int_tok(&toks, 0)?),
            "Start" => {
                int_tok(&toks, 0)?;
                start_seen = true;
            }
            "AP" => {
                let k = int_tok(&toks, 0)?;
                if toks.len() != k + 1 || !toks[1..].iter().all(|t| t.starts_with('"')) {
                    return Err(format!("line {}: AP count does not match names", i + 1));
                }
                aps = Some(k);
            }
            "Acceptance" => {
                let k = int_tok(&toks, 0)?;
                let used = acceptance_sets(&toks[1..]).map_err(|e| format!("line {}: {e}", i + 1))?;
                if used.iter().any(|&s| s >= k) {
                    return Err(format!("line {}: acceptance set out of range", i + 1));
                }
                sets = Some(k);
            }
            _ => {}
        }
    }
    let states = states.ok_or("missing States")?;
    let aps = aps.ok_or("missing AP")?;
    let sets = sets.ok_or("missing Acceptance")?;
    if !start_seen {
        return Err("missing Start".into());
    }
    let mut declared = vec![false; states];
    let mut current = None;
    for (i, line) in lines.by_ref() {
        let at = |m: &str| format!("line {}: {m}", i + 1);
        if line == "--END--" {
            if declared.iter().all(|&d| d) {
                return Ok(());
            }
            return Err("not every state is declared".into());
        }
        if let Some(rest) = line.strip_prefix("State:") {
            let toks = tokens(rest).map_err(|e| at(&e))?;
            let q = int_tok(&toks, 0).map_err(|e| at(&e))?;
            if q >= states || declared[q] {
                return Err(at("bad or repeated state"));
            }
            declared[q] = true;
            current = Some(q);
            check_marks(toks.iter().skip(1).skip_while(|t| t.starts_with('"')), sets).map_err(|e| at(&e))?;
        } else if let Some(rest) = line.strip_prefix('[') {
            current.ok_or_else(|| at("edge before State"))?;
            let (label, tail) = rest.split_once(']').ok_or_else(|| at("unterminated label"))?;
            label_expr(label, aps).map_err(|e| at(&e))?;
            let toks = tokens(tail).map_err(|e| at(&e))?;
            if int_tok(&toks, 0).map_err(|e| at(&e))? >= states {
                return Err(at("edge target out of range"));
            }
            check_marks(toks.iter().skip(1), sets).map_err(|e| at(&e))?;
        } else {
            return Err(at("unexpected body line"));
        }
    }
    Err("missing --END--".into())
}

fn tokens(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            let mut t = String::from(chars.next().unwrap());
            loop {
                match chars.next().ok_or("unterminated string")? {
                    '\\' => t.push(chars.next().ok_or("dangling escape")?),
                    '"' => break,
                    ch => t.push(ch),
                }
            }
            t.push('"');
            out.push(t);
        } else if "(){}&|!".contains(c) {
            out.push(chars.next().unwrap().to_string());
        } else {
            let mut t = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || "(){}&|!\"".contains(ch) {
                    break;
                }
                t.push(ch);
                chars.next();
            }
            out.push(t);
        }
    }
    Ok(out)
}

fn int_tok(toks: &[String], i: usize) -> Result<usize, String> {
    toks.get(i).and_then(|t| t.parse().ok()).ok_or_else(|| format!("expected an integer at token {i}"))
}

fn check_marks<'a>(mut rest: impl Iterator<Item = &'a String>, sets: usize) -> Result<(), String> {
    let Some(open) = rest.next() else { return Ok(()) };
    if open != "{" {
        return Err(format!("unexpected `{open}`"));
    }
    for t in rest.by_ref() {
        if t == "}" {
            return match rest.next() {
                None => Ok(()),
                Some(x) => Err(format!("trailing `{x}`")),
            };
        }
        match t.parse::<usize>() {
            Ok(s) if s < sets => {}
            _ => return Err(format!("bad acceptance mark `{t}`")),
        }
    }
    Err("unterminated acceptance marks".into())
}

/// `acc ::= disj`, `disj ::= conj ('|' conj)*`, `conj ::= atom ('&' atom)*`,
/// `atom ::= 't' | 'f' | ('Inf'|'Fin') '(' '!'? int ')' | '(' disj ')'`.
fn acceptance_sets(toks: &[String]) -> Result<Vec<usize>, String> {
    struct P<'a> {
        toks: &'a [String],
        pos: usize,
        sets: Vec<usize>,
    }
    impl P<'_> {
        fn peek(&self) -> Option<&str> {
            self.toks.get(self.pos).map(String::as_str)
        }
        fn eat(&mut self, t: &str) -> Result<(), String> {
            if self.peek() == Some(t) {
                self.pos += 1;
                Ok(())
            } else {
                Err(format!("expected `{t}` at token {}", self.pos))
            }
        }
        fn disj(&mut self) -> Result<(), String> {
            self.conj()?;
            while self.peek() == Some("|") {
                self.pos += 1;
                self.conj()?;
            }
            Ok(())
        }
        fn conj(&mut self) -> Result<(), String> {
            self.atom()?;
            while self.peek() == Some("&") {
                self.pos += 1;
                self.atom()?;
            }
            Ok(())
        }
        fn atom(&mut self) -> Result<(), String> {
            match self.peek() {
                Some("t") | Some("f") => {
                    self.pos += 1;
                    Ok(())
                }
                Some("Inf") | Some("Fin") => {
                    self.pos += 1;
                    self.eat("(")?;
                    if self.peek() == Some("!") {
                        self.pos += 1;
                    }
                    let s = int_tok(self.toks, self.pos)?;
                    self.sets.push(s);
                    self.pos += 1;
                    self.eat(")")
                }
                Some("(") => {
                    self.pos += 1;
                    self.disj()?;
                    self.eat(")")
                }
                other => Err(format!("unexpected {other:?} in acceptance")),
            }
        }
    }
    let mut p = P { toks, pos: 0, sets: Vec::new() };
    p.disj()?;
    if p.pos != toks.len() {
        return Err("trailing tokens after acceptance".into());
    }
    Ok(p.sets)
}

/// Label expressions over `t`, `f`, AP indices, `!`, `&`, `|` and parentheses.
fn label_expr(label: &str, aps: usize) -> Result<(), String> {
    let toks = tokens(label)?;
    let mut pos = 0;
    fn disj(t: &[String], pos: &mut usize, aps: usize) -> Result<(), String> {
        conj(t, pos, aps)?;
        while t.get(*pos).map(String::as_str) == Some("|") {
            *pos += 1;
            conj(t, pos, aps)?;
        }
        Ok(())
    }
    fn conj(t: &[String], pos: &mut usize, aps: usize) -> Result<(), String> {
        unary(t, pos, aps)?;
        while t.get(*pos).map(String::as_str) == Some("&") {
            *pos += 1;
            unary(t, pos, aps)?;
        }
        Ok(())
    }
    fn unary(t: &[String], pos: &mut usize, aps: usize) -> Result<(), String> {
        let tok = t.get(*pos).ok_or("label ends early")?;
        *pos += 1;
        match tok.as_str() {
            "!" => unary(t, pos, aps),
            "t" | "f" => Ok(()),
            "(" => {
                disj(t, pos, aps)?;
                if t.get(*pos).map(String::as_str) != Some(")") {
                    return Err("missing `)` in label".into());
                }
                *pos += 1;
                Ok(())
            }
            s => match s.parse::<usize>() {
                Ok(j) if j < aps => Ok(()),
                _ => Err(format!("bad label token `{s}`")),
            },
        }
    }
    disj(&toks, &mut pos, aps)?;
    if pos != toks.len() {
        return Err("trailing tokens in label".into());
    }
    Ok(())
}
