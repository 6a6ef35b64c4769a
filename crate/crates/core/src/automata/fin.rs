use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};

use super::{Automaton, BuchiAutomaton, FinAutomaton, StateId};

impl FinAutomaton {
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.run(word).iter().any(|&q| self.is_accepting(q))
    }

    pub fn is_empty_language(&self) -> bool {
        let reach = self.reachable();
        !self.states().any(|q| reach[q] && self.is_accepting(q))
    }

    /// Subset construction restricted to reachable, non-empty subsets.
    pub fn determinize(&self) -> FinAutomaton {
        let mut out = FinAutomaton::new(self.alphabet().clone());
        if self.initial().is_empty() {
            return out;
        }
        let mut index: HashMap<Vec<StateId>, StateId> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = self.initial().to_vec();
        let id = out.add_state(start.iter().any(|&q| self.is_accepting(q)));
        out.add_initial(id);
        index.insert(start.clone(), id);
        queue.push_back(start);
        while let Some(set) = queue.pop_front() {
            let from = index[&set];
            for sym in self.alphabet().symbols() {
                let next = self.post(&set, sym);
                if next.is_empty() {
                    continue;
                }
                let to = match index.get(&next) {
                    Some(&t) => t,
                    None => {
                        let t = out.add_state(next.iter().any(|&q| self.is_accepting(q)));
                        index.insert(next.clone(), t);
                        queue.push_back(next);
                        t
                    }
                };
                out.add_transition(from, sym, to);
            }
        }
        out
    }

    /// Removes unreachable states and states that cannot reach acceptance.
    pub fn trim(&self) -> FinAutomaton {
        let reach = self.reachable();
        let acc: Vec<bool> = self.states().map(|q| self.is_accepting(q)).collect();
        let co = self.coreachable(&acc);
        let keep: Vec<bool> = self.states().map(|q| reach[q] && co[q]).collect();
        self.restrict(&keep)
    }

    /// Deterministic, minimal and trimmed automaton for the same language.
    /// States are numbered in breadth-first order over sorted symbols; the
    /// empty language yields the 0-state automaton.
    pub fn canonicalize(&self) -> FinAutomaton {
        let dfa = self.determinize().trim();
        if dfa.initial().is_empty() {
            return FinAutomaton::new(self.alphabet().clone());
        }
        let classes = moore_classes(&dfa);
        let nclasses = classes.iter().max().map_or(0, |m| m + 1);

        // Breadth-first renumbering of the quotient automaton.
        let mut order: Vec<Option<StateId>> = vec![None; nclasses];
        let mut repr: Vec<StateId> = Vec::new();
        let mut queue = VecDeque::new();
        let start = classes[dfa.initial()[0]];
        order[start] = Some(0);
        repr.push(dfa.initial()[0]);
        queue.push_back(dfa.initial()[0]);
        while let Some(q) = queue.pop_front() {
            for &(_, t) in dfa.transitions(q) {
                let c = classes[t];
                if order[c].is_none() {
                    order[c] = Some(repr.len());
                    repr.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut out = FinAutomaton::new(self.alphabet().clone());
        for &q in &repr {
            out.add_state(dfa.is_accepting(q));
        }
        out.add_initial(0);
        for (i, &q) in repr.iter().enumerate() {
            for &(s, t) in dfa.transitions(q) {
                out.add_transition(i, s, order[classes[t]].expect("reachable class"));
            }
        }
        out
    }

    /// Residual language `w\L = { v | wv ∈ L }`.
    pub fn left_quotient(&self, word: &[Symbol]) -> Result<FinAutomaton> {
        check_word(self, word)?;
        let mut out = self.clone();
        out.initial = self.run(word);
        Ok(out.canonicalize())
    }

    /// Same graph started at `q`.
    pub fn rebased(&self, q: StateId) -> FinAutomaton {
        let mut out = self.clone();
        out.initial = vec![q];
        out
    }

    /// True when every state of the canonical form is accepting, i.e. the
    /// language equals its prefix closure.
    pub fn is_prefix_closed(&self) -> bool {
        let c = self.canonicalize();
        c.states().all(|q| c.is_accepting(q))
    }

    /// Automaton for `pre(L)`.
    pub fn prefix_closure(&self) -> FinAutomaton {
        self.trim().all_accepting().canonicalize()
    }

    /// Eilenberg limit of a prefix-closed language: the ω-words all of whose
    /// prefixes lie in `L`.
    pub fn limit(&self) -> Result<BuchiAutomaton> {
        let c = self.canonicalize();
        if !c.states().all(|q| c.is_accepting(q)) {
            return Err(Error::NotPrefixClosed);
        }
        Ok(c.reinterpret())
    }

    /// Eilenberg limit of an arbitrary regular language: ω-words with
    /// infinitely many prefixes in `L`. Read off the canonical DFA with its
    /// final states as Büchi states.
    pub fn eilenberg_limit(&self) -> BuchiAutomaton {
        self.canonicalize().reinterpret::<super::Buchi>().reduce()
    }

    /// States of the canonical automaton whose residual language is `{ε}`.
    /// Only meaningful on canonical automata.
    pub fn maximal_states(&self) -> Vec<StateId> {
        self.states()
            .filter(|&q| self.is_accepting(q) && self.transitions(q).is_empty())
            .collect()
    }

    /// Whether `L` contains a word with no proper continuation in `L`.
    pub fn has_maximal_words(&self) -> bool {
        !self.canonicalize().maximal_states().is_empty()
    }
}

fn check_word<K: super::Acceptance>(a: &Automaton<K>, word: &[Symbol]) -> Result<()> {
    match word.iter().find(|s| !a.alphabet().contains(**s)) {
        Some(s) => Err(Error::UnknownSymbol(format!("#{}", s.0))),
        None => Ok(()),
    }
}

/// Moore partition refinement on a trimmed partial DFA.
fn moore_classes(dfa: &FinAutomaton) -> Vec<usize> {
    let n = dfa.num_states();
    let mut classes: Vec<usize> = (0..n).map(|q| usize::from(dfa.is_accepting(q))).collect();
    let mut count = 0;
    loop {
        let mut sig_index: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            let sig: Vec<Option<usize>> = dfa
                .alphabet()
                .symbols()
                .map(|s| dfa.successors(q, s).next().map(|t| classes[t]))
                .collect();
            let len = sig_index.len();
            next[q] = *sig_index.entry((classes[q], sig)).or_insert(len);
        }
        let new_count = sig_index.len();
        classes = next;
        if new_count == count {
            return classes;
        }
        count = new_count;
    }
}

/// Breadth-first search over the synchronous product of two canonical DFAs.
/// Stops at the first pair for which `bad` holds and returns its access word.
fn search_pairs(
    a: &FinAutomaton,
    b: &FinAutomaton,
    bad: impl Fn(Option<StateId>, Option<StateId>) -> bool,
) -> Option<Word> {
    type Pair = (Option<StateId>, Option<StateId>);
    let start: Pair = (a.initial().first().copied(), b.initial().first().copied());
    let mut parent: HashMap<Pair, Option<(Pair, Symbol)>> = HashMap::new();
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        if bad(pair.0, pair.1) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some(Some((p, s))) = parent.get(&cur) {
                word.push(*s);
                cur = *p;
            }
            word.reverse();
            return Some(word);
        }
        for sym in a.alphabet().symbols() {
            let na = pair.0.and_then(|q| a.successors(q, sym).next());
            let nb = pair.1.and_then(|q| b.successors(q, sym).next());
            if na.is_none() && nb.is_none() {
                continue;
            }
            let next = (na, nb);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((pair, sym)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Shortest word accepted by exactly one of the two automata, if any.
pub fn distinguishing_word(a: &FinAutomaton, b: &FinAutomaton) -> Result<Option<Word>> {
    a.alphabet().ensure_same(b.alphabet())?;
    let (ca, cb) = (a.canonicalize(), b.canonicalize());
    let acc = |x: &FinAutomaton, q: Option<StateId>| q.is_some_and(|q| x.is_accepting(q));
    Ok(search_pairs(&ca, &cb, |p, q| acc(&ca, p) != acc(&cb, q)))
}

pub fn language_equal(a: &FinAutomaton, b: &FinAutomaton) -> Result<bool> {
    Ok(distinguishing_word(a, b)?.is_none())
}

/// `None` when `L(a) ⊆ L(b)`, otherwise a shortest word of `L(a) \ L(b)`.
pub fn language_subset(a: &FinAutomaton, b: &FinAutomaton) -> Result<Option<Word>> {
    a.alphabet().ensure_same(b.alphabet())?;
    let (ca, cb) = (a.canonicalize(), b.canonicalize());
    let acc = |x: &FinAutomaton, q: Option<StateId>| q.is_some_and(|q| x.is_accepting(q));
    Ok(search_pairs(&ca, &cb, |p, q| acc(&ca, p) && !acc(&cb, q)))
}

/// Intersection of two finitary languages.
pub fn product_fin(a: &FinAutomaton, b: &FinAutomaton) -> Result<FinAutomaton> {
    a.alphabet().ensure_same(b.alphabet())?;
    let mut out = FinAutomaton::new(a.alphabet().clone());
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut queue = VecDeque::new();
    for &p in a.initial() {
        for &q in b.initial() {
            let id = out.add_state(a.is_accepting(p) && b.is_accepting(q));
            out.add_initial(id);
            index.insert((p, q), id);
            queue.push_back((p, q));
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        let from = index[&(p, q)];
        for &(s, p2) in a.transitions(p) {
            for q2 in b.successors(q, s) {
                let to = *index.entry((p2, q2)).or_insert_with(|| {
                    queue.push_back((p2, q2));
                    out.add_state(a.is_accepting(p2) && b.is_accepting(q2))
                });
                out.add_transition(from, s, to);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// {ε, a, ab}
    fn eps_a_ab() -> FinAutomaton {
        FinAutomaton::from_parts(ab(), 3, [0], [0, 1, 2], [(0, Symbol(0), 1), (1, Symbol(1), 2)]).unwrap()
    }

    #[test]
    fn redundant_nfa_for_a_star_collapses() {
        // three states all accepting a*, with nondeterminism
        let a = FinAutomaton::from_parts(
            ab(),
            3,
            [0, 1],
            [0, 1, 2],
            [(0, Symbol(0), 1), (1, Symbol(0), 2), (2, Symbol(0), 0), (0, Symbol(0), 0)],
        )
        .unwrap();
        let c = a.canonicalize();
        assert_eq!(c.num_states(), 1);
        assert_eq!(c.transitions(0), &[(Symbol(0), 0)]);
        assert!(c.is_deterministic());
    }

    #[test]
    fn finite_language_keeps_three_states() {
        let c = eps_a_ab().canonicalize();
        assert_eq!(c.num_states(), 3);
        assert!(c.accepts(&[]) && c.accepts(&[Symbol(0)]) && c.accepts(&[Symbol(0), Symbol(1)]));
        assert!(!c.accepts(&[Symbol(1)]));
    }

    #[test]
    fn empty_language_is_zero_states() {
        let a = FinAutomaton::from_parts(ab(), 2, [0], [], [(0, Symbol(0), 1)]).unwrap();
        assert_eq!(a.canonicalize().num_states(), 0);
        assert!(language_equal(&a, &FinAutomaton::new(ab())).unwrap());
    }

    #[test]
    fn subset_counterexample_is_shortest() {
        let small = FinAutomaton::from_parts(ab(), 2, [0], [0, 1], [(0, Symbol(0), 1)]).unwrap();
        let big = eps_a_ab();
        assert_eq!(language_subset(&small, &big).unwrap(), None);
        assert_eq!(
            language_subset(&big, &small).unwrap(),
            Some(vec![Symbol(0), Symbol(1)])
        );
        assert!(!language_equal(&big, &small).unwrap());
    }

    #[test]
    fn quotients() {
        // a*b
        let a_star_b =
            FinAutomaton::from_parts(ab(), 2, [0], [1], [(0, Symbol(0), 0), (0, Symbol(1), 1)]).unwrap();
        let q = a_star_b.left_quotient(&[Symbol(0)]).unwrap();
        assert!(language_equal(&q, &a_star_b).unwrap());
        let q = eps_a_ab().left_quotient(&[Symbol(0), Symbol(1)]).unwrap();
        assert_eq!(q.num_states(), 1);
        assert!(q.accepts(&[]) && q.transitions(0).is_empty());
        let q = eps_a_ab().left_quotient(&[Symbol(1)]).unwrap();
        assert_eq!(q.num_states(), 0);
        assert!(eps_a_ab().left_quotient(&[Symbol(7)]).is_err());
    }

    #[test]
    fn limit_requires_prefix_closure() {
        let a_star_b =
            FinAutomaton::from_parts(ab(), 2, [0], [1], [(0, Symbol(0), 0), (0, Symbol(1), 1)]).unwrap();
        assert_eq!(a_star_b.limit().unwrap_err(), Error::NotPrefixClosed);
        assert_eq!(a_star_b.eilenberg_limit().num_states(), 0);
        assert!(eps_a_ab().limit().is_ok());
        assert_eq!(eps_a_ab().canonicalize().maximal_states(), vec![2]);
    }

    #[test]
    fn alphabet_mismatch_is_reported() {
        let other = FinAutomaton::new(Alphabet::new(["a"]).unwrap());
        assert!(matches!(
            language_equal(&eps_a_ab(), &other),
            Err(Error::AlphabetMismatch { .. })
        ));
    }
}
