//! Alphabets, interned symbols and finite words.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Token reserved for the empty word / the hidden-action proposition.
pub const EPS: &str = "eps";
/// Padding letter added by the maximal-word extension.
pub const PAD: &str = "#";

/// Index of a letter inside its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl Symbol {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type Word = Vec<Symbol>;

/// Ordered set of distinct letters. Symbols are numbered in sorted order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Arc<[String]>,
}

impl Alphabet {
    /// Builds a user alphabet. Rejects duplicates and the reserved tokens.
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if let Some(bad) = letters.iter().find(|l| l.as_str() == PAD || l.as_str() == EPS) {
            return Err(Error::InvalidAlphabet(format!("`{bad}` is reserved")));
        }
        Self::build(letters)
    }

    /// Like [`Alphabet::new`] but tolerates the padding letter, for reading
    /// back automata produced by the extension construction.
    pub fn with_reserved<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.iter().any(|l| l.as_str() == EPS) {
            return Err(Error::InvalidAlphabet(format!("`{EPS}` is reserved")));
        }
        Self::build(letters)
    }

    fn build(mut letters: Vec<String>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if let Some(bad) = letters.iter().find(|l| l.is_empty() || l.chars().any(char::is_whitespace)) {
            return Err(Error::InvalidAlphabet(format!("bad letter `{bad}`")));
        }
        letters.sort();
        for pair in letters.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidAlphabet(format!("duplicate letter `{}`", pair[0])));
            }
        }
        Ok(Alphabet {
            letters: letters.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.letters.len() as u32).map(Symbol)
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.letters[s.index()]
    }

    pub fn symbol(&self, letter: &str) -> Option<Symbol> {
        self.letters
            .binary_search_by(|l| l.as_str().cmp(letter))
            .ok()
            .map(|i| Symbol(i as u32))
    }

    pub fn lookup(&self, letter: &str) -> Result<Symbol> {
        self.symbol(letter)
            .ok_or_else(|| Error::UnknownSymbol(letter.to_string()))
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index() < self.letters.len()
    }

    pub fn has_pad(&self) -> bool {
        self.symbol(PAD).is_some()
    }

    /// The alphabet extended with the padding letter `#`.
    pub fn padded(&self) -> Alphabet {
        if self.has_pad() {
            return self.clone();
        }
        let mut letters: Vec<String> = self.letters.to_vec();
        letters.push(PAD.to_string());
        letters.sort();
        Alphabet {
            letters: letters.into(),
        }
    }

    /// Parses a whitespace separated word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace().map(|t| self.lookup(t)).collect()
    }

    pub fn render(&self, word: &[Symbol]) -> String {
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Maps every symbol of `self` to the same letter in `other`, if present.
    pub fn embedding_into(&self, other: &Alphabet) -> Vec<Option<Symbol>> {
        self.letters.iter().map(|l| other.symbol(l)).collect()
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.letters.join(", "))
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_are_sorted_and_unique() {
        let a = Alphabet::new(["c", "a", "b"]).unwrap();
        assert_eq!(a.letters(), ["a", "b", "c"]);
        assert_eq!(a.lookup("b").unwrap(), Symbol(1));
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_err());
    }

    #[test]
    fn reserved_tokens() {
        assert!(Alphabet::new(["a", "eps"]).is_err());
        assert!(Alphabet::new(["a", "#"]).is_err());
        let padded = Alphabet::new(["a"]).unwrap().padded();
        assert_eq!(padded.letters(), ["#", "a"]);
        assert!(Alphabet::with_reserved(["#", "a"]).is_ok());
    }

    #[test]
    fn words_round_trip() {
        let a = Alphabet::new(["lock", "request"]).unwrap();
        let w = a.parse_word("lock request lock").unwrap();
        assert_eq!(a.render(&w), "lock request lock");
        assert!(matches!(a.parse_word("free"), Err(Error::UnknownSymbol(_))));
    }
}
