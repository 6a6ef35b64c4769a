//! Line-oriented text formats for automata (`.aut`) and homomorphisms (`.hom`).
//!
//! ```text
//! # full-line comments start with '#'
//! alphabet: lock request result
//! acceptance: buchi          (absent: finitary)
//! states: s0 s1
//! initial: s0
//! accepting: s1              (absent: every state accepting)
//! trans: s0 lock s1
//! ```
//!
//! A `.hom` file has one `letter -> image` line per source letter, where the
//! image is a letter or `eps`.

use std::collections::HashMap;
use std::fmt::Write;

use crate::abstraction::Homomorphism;
use crate::alphabet::{Alphabet, EPS};
use crate::automata::{Acceptance, Automaton, BuchiAutomaton, FinAutomaton, StateId};
use crate::error::{Error, Result};

/// An automaton read from a file, with the acceptance kind it declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedAutomaton {
    Finite(FinAutomaton),
    Buchi(BuchiAutomaton),
}

impl ParsedAutomaton {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            ParsedAutomaton::Finite(a) => a.alphabet(),
            ParsedAutomaton::Buchi(a) => a.alphabet(),
        }
    }

    /// The ω-behavior: Büchi automata as they are, finitary automata by
    /// their limit (the ω-words with infinitely many prefixes in the language).
    pub fn omega_behavior(&self) -> BuchiAutomaton {
        match self {
            ParsedAutomaton::Finite(a) => a.eilenberg_limit(),
            ParsedAutomaton::Buchi(a) => a.clone(),
        }
    }

    pub fn print(&self) -> String {
        match self {
            ParsedAutomaton::Finite(a) => print_automaton(a),
            ParsedAutomaton::Buchi(a) => print_automaton(a),
        }
    }
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, c)) in line.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((i, col + 1)),
            (true, Some((s, column))) => {
                out.push(Token { text: &line[s..i], column });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, column)) = start {
        out.push(Token { text: &line[s..], column });
    }
    out
}

fn is_comment(line: &str) -> bool {
    line.trim_start().starts_with('#')
}

/// A meaningful line: `(line number, key, key column, values)`.
type Directive<'a> = (usize, String, usize, Vec<Token<'a>>);

fn directives(text: &str) -> Result<Vec<Directive<'_>>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || is_comment(line) {
            continue;
        }
        let Some(colon) = line.find(':') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(Error::parse(i + 1, col, "expected `key: values`"));
        };
        let key = line[..colon].trim().to_string();
        let key_col = line[..colon].len() - line[..colon].trim_start().len() + 1;
        let offset = line[..=colon].chars().count();
        let values = tokens(&line[colon + 1..])
            .into_iter()
            .map(|t| Token {
                text: t.text,
                column: t.column + offset,
            })
            .collect();
        out.push((i + 1, key, key_col, values));
    }
    Ok(out)
}

/// Parses an `.aut` file.
pub fn parse_automaton(text: &str) -> Result<ParsedAutomaton> {
    let lines = directives(text)?;
    let eof = text.lines().count() + 1;
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (line, key, col, _) in &lines {
        let known = ["alphabet", "acceptance", "states", "initial", "accepting", "trans"];
        let Some(k) = known.iter().find(|k| **k == key) else {
            return Err(Error::parse(*line, *col, format!("unknown key `{key}`")));
        };
        if *k != "trans" {
            if let Some(first) = seen.insert(k, *line) {
                return Err(Error::parse(*line, *col, format!("`{key}` already given on line {first}")));
            }
        }
    }
    let find = |k: &str| lines.iter().find(|(_, key, _, _)| key == k);
    let require = |k: &str| find(k).ok_or_else(|| Error::parse(eof, 1, format!("missing `{k}:` line")));

    let (aline, _, acol, letters) = require("alphabet")?;
    let alphabet = Alphabet::with_reserved(letters.iter().map(|t| t.text))
        .map_err(|e| Error::parse(*aline, letters.first().map_or(*acol, |t| t.column), e.to_string()))?;

    let buchi = match find("acceptance") {
        None => false,
        Some((line, _, col, vals)) => match vals.as_slice() {
            [t] if t.text == "buchi" => true,
            [t] if t.text == "finitary" => false,
            _ => {
                let col = vals.first().map_or(*col, |t| t.column);
                return Err(Error::parse(*line, col, "acceptance must be `buchi` or `finitary`"));
            }
        },
    };

    let (_, _, _, state_toks) = require("states")?;
    let mut names: HashMap<&str, StateId> = HashMap::new();
    for (i, t) in state_toks.iter().enumerate() {
        if names.insert(t.text, i).is_some() {
            return Err(Error::parse(lines_of(&lines, "states"), t.column, format!("duplicate state `{}`", t.text)));
        }
    }
    let state = |line: usize, t: &Token<'_>| {
        names
            .get(t.text)
            .copied()
            .ok_or_else(|| Error::parse(line, t.column, format!("unknown state `{}`", t.text)))
    };

    let (iline, _, _, init_toks) = require("initial")?;
    let initial = init_toks.iter().map(|t| state(*iline, t)).collect::<Result<Vec<_>>>()?;
    let accepting = match find("accepting") {
        None => (0..state_toks.len()).collect(),
        Some((line, _, _, toks)) => toks.iter().map(|t| state(*line, t)).collect::<Result<Vec<_>>>()?,
    };

    let mut transitions = Vec::new();
    for (line, key, col, vals) in &lines {
        if key != "trans" {
            continue;
        }
        let [p, a, q] = vals.as_slice() else {
            let col = vals.get(3).map_or(*col, |t| t.column);
            return Err(Error::parse(*line, col, "expected `trans: from letter to`"));
        };
        let sym = alphabet
            .symbol(a.text)
            .ok_or_else(|| Error::parse(*line, a.column, format!("unknown letter `{}`", a.text)))?;
        transitions.push((state(*line, p)?, sym, state(*line, q)?));
    }

    fn build<K: Acceptance>(
        alphabet: Alphabet,
        names: &[Token<'_>],
        initial: Vec<StateId>,
        accepting: Vec<StateId>,
        transitions: Vec<(StateId, crate::alphabet::Symbol, StateId)>,
    ) -> Result<Automaton<K>> {
        let mut a = Automaton::<K>::from_parts(alphabet, names.len(), initial, accepting, transitions)?;
        for (i, t) in names.iter().enumerate() {
            a.rename_state(i, t.text);
        }
        Ok(a)
    }
    Ok(if buchi {
        ParsedAutomaton::Buchi(build(alphabet, state_toks, initial, accepting, transitions)?)
    } else {
        ParsedAutomaton::Finite(build(alphabet, state_toks, initial, accepting, transitions)?)
    })
}

fn lines_of(lines: &[Directive<'_>], key: &str) -> usize {
    lines.iter().find(|l| l.1 == key).map_or(0, |l| l.0)
}

/// Canonical text of an automaton; `parse_automaton` reads it back unchanged.
pub fn print_automaton<K: Acceptance>(a: &Automaton<K>) -> String {
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = &str>| it.collect::<Vec<_>>().join(" ");
    let line = |out: &mut String, key: &str, rest: String| {
        if rest.is_empty() {
            let _ = writeln!(out, "{key}:");
        } else {
            let _ = writeln!(out, "{key}: {rest}");
        }
    };
    line(&mut out, "alphabet", join(&mut a.alphabet().letters().iter().map(String::as_str)));
    let buchi = K::KIND == "buchi";
    if buchi {
        line(&mut out, "acceptance", "buchi".into());
    }
    line(&mut out, "states", join(&mut a.states().map(|q| a.state_name(q))));
    line(&mut out, "initial", join(&mut a.initial().iter().map(|&q| a.state_name(q))));
    if buchi || a.states().any(|q| !a.is_accepting(q)) {
        line(&mut out, "accepting", join(&mut a.accepting_states().map(|q| a.state_name(q))));
    }
    for (p, s, q) in a.all_transitions() {
        let _ = writeln!(out, "trans: {} {} {}", a.state_name(p), a.alphabet().name(s), a.state_name(q));
    }
    out
}

/// Parses a `.hom` file over the given source alphabet. The target alphabet
/// consists of the letters occurring as images.
pub fn parse_homomorphism(text: &str, source: &Alphabet) -> Result<Homomorphism> {
    let mut pairs: Vec<(String, Option<String>, usize)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() || is_comment(line) {
            continue;
        }
        let toks = tokens(line);
        let [from, arrow, to] = toks.as_slice() else {
            let col = toks.first().map_or(1, |t| t.column);
            return Err(Error::parse(i + 1, col, "expected `letter -> letter` or `letter -> eps`"));
        };
        if arrow.text != "->" {
            return Err(Error::parse(i + 1, arrow.column, "expected `->`"));
        }
        if source.symbol(from.text).is_none() {
            return Err(Error::parse(i + 1, from.column, format!("`{}` is not a letter of {source}", from.text)));
        }
        if let Some((_, _, first)) = pairs.iter().find(|(f, _, _)| f == from.text) {
            return Err(Error::parse(i + 1, from.column, format!("`{}` already mapped on line {first}", from.text)));
        }
        let image = (to.text != EPS).then(|| to.text.to_string());
        pairs.push((from.text.to_string(), image, i + 1));
    }
    let eof = text.lines().count() + 1;
    if let Some(missing) = source.letters().iter().find(|l| !pairs.iter().any(|(f, _, _)| f == *l)) {
        return Err(Error::parse(eof, 1, format!("letter `{missing}` has no image")));
    }
    let images: Vec<&str> = pairs.iter().filter_map(|(_, t, _)| t.as_deref()).collect();
    let mut distinct = images.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let target = Alphabet::with_reserved(distinct)
        .map_err(|e| Error::parse(eof, 1, format!("target alphabet: {e}")))?;
    Homomorphism::from_pairs(
        source,
        &target,
        pairs.iter().map(|(f, t, _)| (f.as_str(), t.as_deref())),
    )
}

/// Canonical text of a homomorphism, one line per source letter.
pub fn print_homomorphism(h: &Homomorphism) -> String {
    let mut out = String::new();
    for s in h.source().symbols() {
        let image = h.apply(s).map_or(EPS, |t| h.target().name(t));
        let _ = writeln!(out, "{} -> {}", h.source().name(s), image);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LTS: &str = "\
# a two-state system
alphabet: a b
states: p q
initial: p
trans: p a q
trans: q b p
";

    #[test]
    fn reads_lts() {
        let ParsedAutomaton::Finite(a) = parse_automaton(LTS).unwrap() else { panic!() };
        assert_eq!(a.num_states(), 2);
        assert!(a.states().all(|q| a.is_accepting(q)));
        assert_eq!(print_automaton(&a), LTS.lines().skip(1).collect::<Vec<_>>().join("\n") + "\n");
    }

    #[test]
    fn round_trips_buchi() {
        let text = "alphabet: # a\nacceptance: buchi\nstates: s t\ninitial: s t\naccepting:\ntrans: s # t\ntrans: t a t\n";
        let parsed = parse_automaton(text).unwrap();
        assert_eq!(parsed.print(), text);
        assert_eq!(parse_automaton(&parsed.print()).unwrap(), parsed);
    }

    #[test]
    fn diagnostics() {
        let err = |t: &str| match parse_automaton(t) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("{other:?}"),
        };
        let (line, _, msg) = err("alphabet: a\nstates: p\ntrans: p a p\n");
        assert_eq!(line, 4);
        assert!(msg.contains("initial"));
        let (line, col, _) = err("alphabet: a\nstates: p\ninitial: p\ntrans: p c p\n");
        assert_eq!((line, col), (4, 10));
        let (line, col, _) = err("alphabet: a\nstates: p\ninitial: r\n");
        assert_eq!((line, col), (3, 10));
        assert_eq!(err("alphabet: a\nfoo: 1\n").0, 2);
        assert_eq!(err("alphabet: a\nstates: p p\n").1, 11);
    }

    #[test]
    fn homomorphisms() {
        let s = Alphabet::new(["lock", "request"]).unwrap();
        let h = parse_homomorphism("lock -> eps\nrequest -> request\n", &s).unwrap();
        assert!(h.is_hidden(s.lookup("lock").unwrap()));
        assert_eq!(print_homomorphism(&h), "lock -> eps\nrequest -> request\n");
        assert!(parse_homomorphism("lock -> eps\n", &s).is_err());
        assert!(parse_homomorphism("lock -> eps\nlock -> eps\nrequest -> request\n", &s).is_err());
        assert!(parse_homomorphism("lock => eps\nrequest -> request\n", &s).is_err());
    }
}
