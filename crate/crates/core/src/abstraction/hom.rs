use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol, Word, EPS, PAD};
use crate::automata::{BuchiAutomaton, FinAutomaton, LassoWord, StateId};
use crate::error::{Error, Result};
use crate::pltl::Labeling;

/// Letter-to-letter-or-ε map from `source` to `target`, extended to words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Alphabet,
    target: Alphabet,
    map: Vec<Option<Symbol>>,
}

impl Homomorphism {
    /// `map[i]` is the image of the `i`-th source letter, `None` for ε.
    pub fn new(source: Alphabet, target: Alphabet, map: Vec<Option<Symbol>>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::Malformed(format!(
                "homomorphism defines {} images for {} letters",
                map.len(),
                source.len()
            )));
        }
        if let Some(s) = map.iter().flatten().find(|s| !target.contains(**s)) {
            return Err(Error::UnknownSymbol(format!("#{}", s.0)));
        }
        Ok(Homomorphism { source, target, map })
    }

    /// Builds the map from `(letter, image)` pairs, where an image of `None`
    /// or `"eps"` hides the letter. Every source letter needs exactly one pair.
    pub fn from_pairs<'a>(
        source: &Alphabet,
        target: &Alphabet,
        pairs: impl IntoIterator<Item = (&'a str, Option<&'a str>)>,
    ) -> Result<Self> {
        let mut map: Vec<Option<Option<Symbol>>> = vec![None; source.len()];
        for (from, to) in pairs {
            let s = source.lookup(from)?;
            if map[s.index()].is_some() {
                return Err(Error::Malformed(format!("letter `{from}` mapped twice")));
            }
            let image = match to {
                None | Some(EPS) => None,
                Some(t) => Some(target.lookup(t)?),
            };
            map[s.index()] = Some(image);
        }
        if let Some(i) = map.iter().position(Option::is_none) {
            return Err(Error::Malformed(format!(
                "letter `{}` has no image",
                source.letters()[i]
            )));
        }
        Self::new(source.clone(), target.clone(), map.into_iter().flatten().collect())
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Homomorphism {
            source: alphabet.clone(),
            target: alphabet.clone(),
            map: alphabet.symbols().map(Some).collect(),
        }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn apply(&self, s: Symbol) -> Option<Symbol> {
        self.map[s.index()]
    }

    pub fn is_hidden(&self, s: Symbol) -> bool {
        self.map[s.index()].is_none()
    }

    pub fn apply_word(&self, w: &[Symbol]) -> Word {
        w.iter().filter_map(|&s| self.apply(s)).collect()
    }

    /// The same map on the alphabets extended with `#`, sending `#` to `#`.
    pub fn lifted(&self) -> Homomorphism {
        let source = self.source.padded();
        let target = self.target.padded();
        let map = source
            .letters()
            .iter()
            .map(|l| match self.source.symbol(l) {
                Some(s) => self.apply(s).map(|t| target.lookup(self.target.name(t)).expect("padded")),
                None => target.symbol(PAD),
            })
            .collect();
        Homomorphism { source, target, map }
    }

    /// Labels each source letter with its image, hidden letters with `eps`.
    pub fn labeling(&self) -> Labeling {
        Labeling::from_fn(&self.source, |l| {
            let s = self.source.lookup(l).expect("own letter");
            let prop = self.apply(s).map_or(EPS, |t| self.target.name(t));
            BTreeSet::from([prop.to_string()])
        })
    }
}

/// Image of an ω-word, which is undefined when the word ends in hidden letters only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomImage {
    Defined(LassoWord),
    Undefined,
}

pub fn apply_hom_lasso(h: &Homomorphism, x: &LassoWord) -> HomImage {
    let cycle = h.apply_word(x.cycle());
    if cycle.is_empty() {
        return HomImage::Undefined;
    }
    let stem = h.apply_word(x.stem());
    HomImage::Defined(LassoWord::new(stem, cycle).expect("non-empty").normalized())
}

/// Canonical automaton for `h(L(a))`: relabel by `h`, then remove the ε-moves.
pub fn image_automaton(h: &Homomorphism, a: &FinAutomaton) -> Result<FinAutomaton> {
    a.alphabet().ensure_same(&h.source)?;
    let n = a.num_states();
    let mut out = FinAutomaton::new(h.target.clone());
    for _ in 0..n {
        out.add_state(false);
    }
    for q in a.states() {
        let closure = eps_closure(h, a, q);
        if closure.iter().any(|&p| a.is_accepting(p)) {
            out.set_accepting(q, true);
        }
        for &p in &closure {
            for &(s, t) in a.transitions(p) {
                if let Some(img) = h.apply(s) {
                    out.add_transition(q, img, t);
                }
            }
        }
    }
    for &q in a.initial() {
        out.add_initial(q);
    }
    Ok(out.canonicalize())
}

fn eps_closure(h: &Homomorphism, a: &FinAutomaton, q: StateId) -> Vec<StateId> {
    let mut seen = vec![false; a.num_states()];
    let mut stack = vec![q];
    seen[q] = true;
    let mut out = Vec::new();
    while let Some(p) = stack.pop() {
        out.push(p);
        for &(s, t) in a.transitions(p) {
            if h.is_hidden(s) && !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    out
}

/// `h⁻¹(L(a))` for a finitary automaton over the target alphabet: hidden
/// letters stutter, visible ones move as their image.
pub fn inverse_image_fin(h: &Homomorphism, a: &FinAutomaton) -> Result<FinAutomaton> {
    a.alphabet().ensure_same(&h.target)?;
    let mut out = FinAutomaton::new(h.source.clone());
    for q in a.states() {
        out.add_state(a.is_accepting(q));
    }
    for &q in a.initial() {
        out.add_initial(q);
    }
    for q in a.states() {
        for c in h.source.symbols() {
            match h.apply(c) {
                None => out.add_transition(q, c, q),
                Some(img) => {
                    for t in a.successors(q, img).collect::<Vec<_>>() {
                        out.add_transition(q, c, t);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `h⁻¹(L(a))` for a Büchi automaton over the target alphabet. A word is
/// accepted only if infinitely many of its letters are visible, so words
/// with an undefined image are rejected.
pub fn inverse_image_buchi(h: &Homomorphism, a: &BuchiAutomaton) -> Result<BuchiAutomaton> {
    a.alphabet().ensure_same(&h.target)?;
    // State 2q: last letter hidden (or start); 2q+1: last letter visible.
    let mut out = BuchiAutomaton::new(h.source.clone());
    for q in a.states() {
        out.add_state(false);
        out.add_state(a.is_accepting(q));
    }
    for &q in a.initial() {
        out.add_initial(2 * q);
    }
    for q in a.states() {
        for from in [2 * q, 2 * q + 1] {
            for c in h.source.symbols() {
                match h.apply(c) {
                    None => out.add_transition(from, c, 2 * q),
                    Some(img) => {
                        for t in a.successors(q, img).collect::<Vec<_>>() {
                            out.add_transition(from, c, 2 * t + 1);
                        }
                    }
                }
            }
        }
    }
    Ok(out.reduce())
}

/// Büchi automaton for `lim(h(L))` of a prefix-closed `L`.
pub fn abstract_behavior(l: &FinAutomaton, h: &Homomorphism) -> Result<BuchiAutomaton> {
    if !l.is_prefix_closed() {
        return Err(Error::NotPrefixClosed);
    }
    image_automaton(h, l)?.limit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{language_equal, lasso_membership};

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn hide_b() -> Homomorphism {
        Homomorphism::from_pairs(&ab(), &Alphabet::new(["a"]).unwrap(), [("a", Some("a")), ("b", None)])
            .unwrap()
    }

    /// `a* b`, not prefix-closed.
    fn a_star_b() -> FinAutomaton {
        let s = ab();
        let mut l = FinAutomaton::new(s.clone());
        let q0 = l.add_state(false);
        let q1 = l.add_state(true);
        l.add_initial(q0);
        l.add_transition(q0, s.lookup("a").unwrap(), q0);
        l.add_transition(q0, s.lookup("b").unwrap(), q1);
        l
    }

    #[test]
    fn lasso_images() {
        let s = ab();
        let h = hide_b();
        let x = LassoWord::parse(";a b", &s).unwrap();
        let a = Alphabet::new(["a"]).unwrap();
        assert_eq!(apply_hom_lasso(&h, &x), HomImage::Defined(LassoWord::parse(";a", &a).unwrap()));
        assert_eq!(apply_hom_lasso(&h, &LassoWord::parse("a;b", &s).unwrap()), HomImage::Undefined);
        let id = Homomorphism::identity(&s);
        assert_eq!(apply_hom_lasso(&id, &x), HomImage::Defined(x));
    }

    #[test]
    fn image_of_a_star_b() {
        let h = hide_b();
        let img = image_automaton(&h, &a_star_b()).unwrap();
        let a = Alphabet::new(["a"]).unwrap();
        let mut astar = FinAutomaton::new(a.clone());
        let q = astar.add_state(true);
        astar.add_initial(q);
        astar.add_transition(q, a.lookup("a").unwrap(), q);
        assert!(language_equal(&img, &astar).unwrap());
        assert!(matches!(abstract_behavior(&a_star_b(), &h), Err(Error::NotPrefixClosed)));
        // h(lim(a*b)) is empty while lim(h(a*b)) = a^ω.
        assert!(a_star_b().eilenberg_limit().is_empty());
        assert!(!img.limit().unwrap().is_empty());

        let back = inverse_image_fin(&h, &astar).unwrap();
        let universal = FinAutomaton::from_parts(ab(), 1, [0], [0], ab().symbols().map(|s| (0, s, 0)).collect::<Vec<_>>());
        assert!(language_equal(&back, &universal.unwrap()).unwrap());
    }

    #[test]
    fn inverse_buchi_needs_visible_letters() {
        let h = hide_b();
        let a = Alphabet::new(["a"]).unwrap();
        let aw = LassoWord::parse(";a", &a).unwrap().automaton(a.clone());
        let inv = inverse_image_buchi(&h, &aw).unwrap();
        let s = ab();
        assert!(lasso_membership(&LassoWord::parse("b;a b b", &s).unwrap(), &inv));
        assert!(!lasso_membership(&LassoWord::parse("a;b", &s).unwrap(), &inv));
    }

    #[test]
    fn lifting_keeps_images_and_fixes_pad() {
        let h = hide_b().lifted();
        let pad = h.source().lookup(PAD).unwrap();
        assert_eq!(h.apply(pad).map(|t| h.target().name(t)), Some(PAD));
        assert!(h.is_hidden(h.source().lookup("b").unwrap()));
        let lab = hide_b().labeling();
        assert!(lab.holds(ab().lookup("b").unwrap(), EPS));
    }
}
