use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol, EPS, PAD};
use crate::error::{Error, Result};

/// Assignment of a set of atomic propositions to every letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    alphabet: Alphabet,
    props: Vec<BTreeSet<String>>,
}

impl Labeling {
    pub fn new(alphabet: Alphabet, props: Vec<BTreeSet<String>>) -> Result<Labeling> {
        if props.len() != alphabet.len() {
            return Err(Error::Malformed(format!(
                "labeling has {} entries for {} letters",
                props.len(),
                alphabet.len()
            )));
        }
        Ok(Labeling { alphabet, props })
    }

    /// Every letter is labelled by itself.
    pub fn canonical(alphabet: &Alphabet) -> Labeling {
        let props = alphabet
            .letters()
            .iter()
            .map(|l| BTreeSet::from([l.clone()]))
            .collect();
        Labeling {
            alphabet: alphabet.clone(),
            props,
        }
    }

    pub fn from_fn(alphabet: &Alphabet, f: impl Fn(&str) -> BTreeSet<String>) -> Labeling {
        let props = alphabet.letters().iter().map(|l| f(l)).collect();
        Labeling {
            alphabet: alphabet.clone(),
            props,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn props(&self, s: Symbol) -> &BTreeSet<String> {
        &self.props[s.index()]
    }

    pub fn holds(&self, s: Symbol, prop: &str) -> bool {
        self.props[s.index()].contains(prop)
    }

    pub fn propositions(&self) -> BTreeSet<String> {
        self.props.iter().flatten().cloned().collect()
    }

    fn extended(&self, pad_props: BTreeSet<String>) -> Labeling {
        if self.alphabet.has_pad() {
            return self.clone();
        }
        let alphabet = self.alphabet.padded();
        let props = alphabet
            .letters()
            .iter()
            .map(|l| match self.alphabet.symbol(l) {
                Some(s) => self.props[s.index()].clone(),
                None => pad_props.clone(),
            })
            .collect();
        Labeling { alphabet, props }
    }

    /// Extension to the alphabet with `#`, labelling `#` by `{eps}`.
    /// Labelings that already cover `#` are returned unchanged.
    pub fn eps_extension(&self) -> Labeling {
        self.extended(BTreeSet::from([EPS.to_string()]))
    }

    /// Extension to the alphabet with `#`, labelling `#` by `{#}`.
    pub fn hash_extension(&self) -> Labeling {
        self.extended(BTreeSet::from([PAD.to_string()]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extensions_label_pad() {
        let s = Alphabet::new(["a", "b"]).unwrap();
        let l = Labeling::canonical(&s);
        let e = l.eps_extension();
        let pad = e.alphabet().symbol(PAD).unwrap();
        assert!(e.holds(pad, EPS));
        assert!(e.holds(e.alphabet().symbol("a").unwrap(), "a"));
        assert!(l.hash_extension().holds(pad, PAD));
        assert_eq!(e.eps_extension(), e);
    }
}
