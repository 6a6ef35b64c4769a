//! Finite-state implementations that satisfy a property under a fairness
//! assumption, for systems satisfying it within fairness.

use std::collections::BTreeSet;

use crate::alphabet::Word;
use crate::automata::{
    distinguishing_word, lasso_membership, product, BuchiAutomaton, FinAutomaton, LassoWord, StateId,
};
use crate::error::{Error, Result};
use crate::relprops::{is_relative_liveness, Property, Verdict, Witness};

/// A transition system without acceptance condition together with a set of
/// marked states; fair runs are those visiting marked states infinitely often.
#[derive(Debug, Clone)]
pub struct FairLts {
    underlying: FinAutomaton,
    marks: Vec<bool>,
}

impl FairLts {
    pub fn new(underlying: FinAutomaton, marks: Vec<bool>) -> Result<FairLts> {
        if marks.len() != underlying.num_states() {
            return Err(Error::Malformed(format!(
                "{} marks for {} states",
                marks.len(),
                underlying.num_states()
            )));
        }
        Ok(FairLts {
            underlying: underlying.all_accepting(),
            marks,
        })
    }

    /// Reads the accepting states of a Büchi automaton as marks.
    pub fn from_buchi(a: &BuchiAutomaton) -> FairLts {
        FairLts {
            marks: a.states().map(|q| a.is_accepting(q)).collect(),
            underlying: a.all_accepting().reinterpret(),
        }
    }

    pub fn underlying(&self) -> &FinAutomaton {
        &self.underlying
    }

    pub fn is_marked(&self, q: StateId) -> bool {
        self.marks[q]
    }

    pub fn marked_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.underlying.states().filter(|&q| self.marks[q])
    }

    /// The fair runs as a Büchi automaton with the marks as accepting states.
    pub fn as_buchi(&self) -> BuchiAutomaton {
        self.underlying.reinterpret().with_accepting(&self.marks)
    }
}

/// Builds an implementation of `lim(L)` all of whose fair runs satisfy `p`:
/// a reduced automaton for `lim(L) ∩ P` with its accepting states turned
/// into fairness marks. Requires `p` to hold within fairness on `lim(L)`.
pub fn synthesize_fair_impl(l: &FinAutomaton, p: &Property) -> Result<FairLts> {
    let system = l.limit()?;
    let rl = is_relative_liveness(&system, p)?;
    if let Some(w) = rl.witness {
        return Err(Error::PreconditionFailed(format!(
            "property does not hold within fairness, prefix {} has no good continuation",
            w.render(l.alphabet())
        )));
    }
    Ok(FairLts::from_buchi(&product(&system, p.positive())?.reduce()))
}

/// Checks that the implementation has exactly the behaviors `lim(L)` and
/// that each of its fair runs satisfies `p`.
pub fn verify_fair_impl(imp: &FairLts, l: &FinAutomaton, p: &Property) -> Result<Verdict> {
    let own = imp.underlying.reinterpret::<crate::automata::Buchi>().prefix_automaton();
    let wanted = l.limit()?.prefix_automaton();
    if let Some(w) = distinguishing_word(&own, &wanted)? {
        return Ok(Verdict::fails(Witness::Prefix(w)));
    }
    let bad = product(&imp.as_buchi(), p.negative())?;
    Ok(match bad.find_accepted_lasso() {
        Some(x) => Verdict::fails(Witness::Lasso(x)),
        None => Verdict::holds(),
    })
}

/// All fair lassos with `|stem| + |cycle| <= max_len`, normalized, ordered by
/// size and then lexicographically.
pub fn enumerate_fair_lassos(imp: &FairLts, max_len: usize) -> Result<Vec<LassoWord>> {
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be at least 1".into()));
    }
    let fair = imp.as_buchi();
    let mut found = BTreeSet::new();
    let mut stack: Vec<(Word, Vec<StateId>)> = vec![(Vec::new(), imp.underlying.initial().to_vec())];
    while let Some((w, states)) = stack.pop() {
        for split in 0..w.len() {
            let x = LassoWord::new(w[..split].to_vec(), w[split..].to_vec())
                .expect("non-empty cycle");
            if lasso_membership(&x, &fair) {
                let x = x.normalized();
                found.insert((x.size(), x.stem().to_vec(), x.cycle().to_vec()));
            }
        }
        if w.len() == max_len {
            continue;
        }
        for s in imp.underlying.alphabet().symbols() {
            let next = imp.underlying.post(&states, s);
            if !next.is_empty() {
                let mut w2 = w.clone();
                w2.push(s);
                stack.push((w2, next));
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(_, stem, cycle)| LassoWord::new(stem, cycle).expect("non-empty cycle"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::pltl::{evaluate_lasso, parse_formula, Labeling};

    fn free(s: &Alphabet) -> FinAutomaton {
        let t: Vec<_> = s.symbols().map(|c| (0, c, 0)).collect();
        FinAutomaton::from_parts(s.clone(), 1, [0], [0], t).unwrap()
    }

    #[test]
    fn twice_a_eventually() {
        let s = Alphabet::new(["a", "b"]).unwrap();
        let lab = Labeling::canonical(&s);
        let f = parse_formula("F (a & X a)").unwrap();
        let p = Property::from_formula(&f, &lab);
        let l = free(&s);

        let imp = synthesize_fair_impl(&l, &p).unwrap();
        assert!(imp.underlying().num_states() > 1);
        assert!(verify_fair_impl(&imp, &l, &p).unwrap().holds);
        for x in enumerate_fair_lassos(&imp, 5).unwrap() {
            assert!(evaluate_lasso(&x, &lab, &f), "{}", x.pretty(&s));
        }

        let minimal = FairLts::new(l.clone(), vec![true]).unwrap();
        let v = verify_fair_impl(&minimal, &l, &p).unwrap();
        assert!(matches!(v.witness, Some(Witness::Lasso(_))));
        let ab = LassoWord::parse(";a b", &s).unwrap();
        assert!(lasso_membership(&ab, &minimal.as_buchi()));
        assert!(!p.contains(&ab));
    }

    #[test]
    fn fails_without_relative_liveness() {
        let s = Alphabet::new(["a", "b"]).unwrap();
        let p = Property::from_formula(&parse_formula("G a").unwrap(), &Labeling::canonical(&s));
        assert!(matches!(synthesize_fair_impl(&free(&s), &p), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn enumeration() {
        let s = Alphabet::new(["a"]).unwrap();
        let imp = FairLts::new(free(&s), vec![true]).unwrap();
        let xs = enumerate_fair_lassos(&imp, 2).unwrap();
        assert_eq!(xs, vec![LassoWord::parse(";a", &s).unwrap()]);
        assert!(enumerate_fair_lassos(&imp, 0).is_err());
    }

    #[test]
    fn deleting_a_transition_changes_the_language() {
        let s = Alphabet::new(["a", "b"]).unwrap();
        let p = Property::from_formula(&parse_formula("true").unwrap(), &Labeling::canonical(&s));
        let smaller = FinAutomaton::from_parts(s.clone(), 1, [0], [0], [(0, s.lookup("a").unwrap(), 0)]).unwrap();
        let imp = FairLts::new(smaller, vec![true]).unwrap();
        let v = verify_fair_impl(&imp, &free(&s), &p).unwrap();
        assert!(matches!(v.witness, Some(Witness::Prefix(_))));
    }
}
