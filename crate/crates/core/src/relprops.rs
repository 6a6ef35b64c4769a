//! Decision procedures for satisfaction within fairness (relative liveness),
//! relative safety, plain satisfaction, machine closure and the safety
//! classification of properties.

use std::fmt;

use crate::alphabet::{Alphabet, Word};
use crate::automata::{language_subset, lasso_membership, product, BuchiAutomaton, LassoWord};
use crate::error::{Error, Result};
use crate::pltl::{to_buchi, Formula, Labeling};

/// An ω-regular property given by an automaton and one for its complement.
#[derive(Debug, Clone)]
pub struct Property {
    positive: BuchiAutomaton,
    negative: BuchiAutomaton,
}

/// Number of short lassos on which user-supplied complement pairs are checked.
const COMPLEMENT_SAMPLES: usize = 400;

impl Property {
    pub fn from_formula(f: &Formula, lambda: &Labeling) -> Property {
        let pair = to_buchi(f, lambda);
        Property {
            positive: pair.positive,
            negative: pair.negative,
        }
    }

    /// Pairs an automaton with one for its complement. Complementarity is
    /// checked on all short lassos (stem and cycle of total length up to four,
    /// at most a few hundred of them), not decided exactly.
    pub fn from_automata(positive: BuchiAutomaton, negative: BuchiAutomaton) -> Result<Property> {
        positive.alphabet().ensure_same(negative.alphabet())?;
        for x in short_lassos(positive.alphabet(), 4, COMPLEMENT_SAMPLES) {
            let (p, n) = (lasso_membership(&x, &positive), lasso_membership(&x, &negative));
            if p == n {
                return Err(Error::NotComplementary(format!(
                    "{} ({} by both)",
                    x.pretty(positive.alphabet()),
                    if p { "accepted" } else { "rejected" }
                )));
            }
        }
        Ok(Property { positive, negative })
    }

    /// Trusts the caller that the automata are complementary.
    pub fn from_automata_unchecked(positive: BuchiAutomaton, negative: BuchiAutomaton) -> Property {
        Property { positive, negative }
    }

    pub fn positive(&self) -> &BuchiAutomaton {
        &self.positive
    }

    pub fn negative(&self) -> &BuchiAutomaton {
        &self.negative
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.positive.alphabet()
    }

    pub fn contains(&self, x: &LassoWord) -> bool {
        lasso_membership(x, &self.positive)
    }
}

/// Lassos with `|stem| + |cycle| <= max_size` in order of size, stopping after `limit`.
pub(crate) fn short_lassos(alphabet: &Alphabet, max_size: usize, limit: usize) -> Vec<LassoWord> {
    let symbols: Vec<_> = alphabet.symbols().collect();
    let mut words: Vec<Vec<Word>> = vec![vec![vec![]]];
    for len in 1..=max_size {
        let next = words[len - 1]
            .iter()
            .flat_map(|w| {
                symbols.iter().map(move |&s| {
                    let mut w = w.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
        words.push(next);
    }
    let mut out = Vec::new();
    for size in 1..=max_size {
        for cycle_len in 1..=size {
            for stem in &words[size - cycle_len] {
                for cycle in &words[cycle_len] {
                    if out.len() == limit {
                        return out;
                    }
                    out.push(LassoWord::new(stem.clone(), cycle.clone()).expect("non-empty cycle"));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A finite prefix that cannot be extended into the property.
    Prefix(Word),
    /// A behavior violating the property.
    Lasso(LassoWord),
}

impl Witness {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        match self {
            Witness::Prefix(w) if w.is_empty() => "ε".to_string(),
            Witness::Prefix(w) => alphabet.render(w),
            Witness::Lasso(x) => x.pretty(alphabet),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds() -> Verdict {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fails(witness: Witness) -> Verdict {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }

    fn from_prefix(counterexample: Option<Word>) -> Verdict {
        counterexample.map_or_else(Verdict::holds, |w| Verdict::fails(Witness::Prefix(w)))
    }

    fn from_lasso(counterexample: Option<LassoWord>) -> Verdict {
        counterexample.map_or_else(Verdict::holds, |x| Verdict::fails(Witness::Lasso(x)))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.holds { "holds" } else { "fails" })
    }
}

/// Every finite behavior of the system can still be continued into one
/// satisfying the property: `pre(L) = pre(L ∩ P)`. The witness is a shortest
/// prefix of `L` with no continuation in `P`.
pub fn is_relative_liveness(system: &BuchiAutomaton, p: &Property) -> Result<Verdict> {
    let good = product(system, &p.positive)?;
    let w = language_subset(&system.prefix_automaton(), &good.prefix_automaton())?;
    Ok(Verdict::from_prefix(w))
}

/// Same as [`is_relative_liveness`].
pub fn satisfies_within_fairness(system: &BuchiAutomaton, p: &Property) -> Result<Verdict> {
    is_relative_liveness(system, p)
}

/// `L ∩ lim(pre(L ∩ P)) ⊆ P`; the witness is a behavior in the left-hand
/// side outside `P`.
pub fn is_relative_safety(system: &BuchiAutomaton, p: &Property) -> Result<Verdict> {
    let good = product(system, &p.positive)?;
    let closure = good.prefix_automaton().limit()?;
    let bad = product(&product(system, &closure)?, &p.negative)?;
    Ok(Verdict::from_lasso(bad.find_accepted_lasso()))
}

/// `L ⊆ P`, with a violating behavior as witness.
pub fn satisfies(system: &BuchiAutomaton, p: &Property) -> Result<Verdict> {
    let bad = product(system, &p.negative)?;
    Ok(Verdict::from_lasso(bad.find_accepted_lasso()))
}

/// `pre(L) ⊆ pre(Λ)`, where `sub` accepts `Λ ⊆ L`.
pub fn is_machine_closed(system: &BuchiAutomaton, sub: &BuchiAutomaton) -> Result<Verdict> {
    let w = language_subset(&system.prefix_automaton(), &sub.prefix_automaton())?;
    Ok(Verdict::from_prefix(w))
}

/// `lim(pre(P)) ⊆ P`.
pub fn is_safety_property(p: &Property) -> bool {
    let closure = p
        .positive
        .prefix_automaton()
        .limit()
        .expect("prefix automata are prefix-closed");
    product(&closure, &p.negative)
        .expect("same alphabet")
        .is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pltl::parse_formula;

    fn universal(s: &Alphabet) -> BuchiAutomaton {
        let mut a = BuchiAutomaton::new(s.clone());
        let q = a.add_state(true);
        a.add_initial(q);
        for sym in s.symbols() {
            a.add_transition(q, sym, q);
        }
        a
    }

    fn prop(s: &Alphabet, f: &str) -> Property {
        Property::from_formula(&parse_formula(f).unwrap(), &Labeling::canonical(s))
    }

    #[test]
    fn free_choice_system() {
        let s = Alphabet::new(["a", "b"]).unwrap();
        let sys = universal(&s);
        let p = prop(&s, "F (a & X a)");
        assert!(is_relative_liveness(&sys, &p).unwrap().holds);
        let rs = is_relative_safety(&sys, &p).unwrap();
        assert!(!rs.holds);
        let b = s.symbol("b").unwrap();
        assert_eq!(
            rs.witness,
            Some(Witness::Lasso(LassoWord::new(vec![], vec![b]).unwrap()))
        );
        assert!(!satisfies(&sys, &p).unwrap().holds);
    }

    #[test]
    fn a_then_maybe_b() {
        let s = Alphabet::new(["a", "b"]).unwrap();
        let (a, b) = (s.symbol("a").unwrap(), s.symbol("b").unwrap());
        let mut sys = BuchiAutomaton::new(s.clone());
        let q0 = sys.add_state(true);
        let q1 = sys.add_state(true);
        sys.add_initial(q0);
        sys.add_transition(q0, a, q0);
        sys.add_transition(q0, b, q1);
        sys.add_transition(q1, b, q1);
        let p = prop(&s, "G a");
        assert!(is_relative_safety(&sys, &p).unwrap().holds);
        let rl = is_relative_liveness(&sys, &p).unwrap();
        assert_eq!(rl.witness, Some(Witness::Prefix(vec![b])));
        assert!(is_safety_property(&p));
        assert!(!is_safety_property(&prop(&s, "F a")));
        assert!(is_safety_property(&prop(&s, "G (a -> X !a)")));
    }

    #[test]
    fn machine_closure() {
        let s = Alphabet::new(["a", "b"]).unwrap();
        let sys = universal(&s);
        let pa = prop(&s, "G a");
        let v = is_machine_closed(&sys, pa.positive()).unwrap();
        assert_eq!(v.witness, Some(Witness::Prefix(vec![s.symbol("b").unwrap()])));
        assert!(is_machine_closed(&sys, &sys).unwrap().holds);
    }

    #[test]
    fn empty_system_satisfies_everything() {
        let s = Alphabet::new(["a"]).unwrap();
        let sys = BuchiAutomaton::new(s.clone());
        assert!(satisfies(&sys, &prop(&s, "F !a")).unwrap().holds);
    }

    #[test]
    fn complement_pairs_are_checked() {
        let s = Alphabet::new(["a", "b"]).unwrap();
        let p = prop(&s, "G F a");
        assert!(Property::from_automata(p.positive().clone(), p.negative().clone()).is_ok());
        assert!(matches!(
            Property::from_automata(p.positive().clone(), p.positive().clone()),
            Err(Error::NotComplementary(_))
        ));
    }
}
