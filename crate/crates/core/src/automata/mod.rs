//! Finite automata over finite words and Büchi automata over ω-words.
//!
//! Both share one explicit-state representation, [`Automaton`], tagged by an
//! acceptance marker. A finitary automaton whose trimmed states are all
//! accepting is a labelled transition system; its language is prefix-closed.

mod buchi;
mod fin;
mod graph;
mod lasso;

use std::fmt;
use std::marker::PhantomData;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

pub use buchi::{lasso_membership, product};
pub use fin::{distinguishing_word, language_equal, language_subset, product_fin};
pub use lasso::{cantor_distance, LassoWord, Rational};

pub type StateId = usize;

/// Acceptance interpretation of an [`Automaton`].
pub trait Acceptance: Clone + Copy + fmt::Debug + PartialEq + Eq + Default + 'static {
    const KIND: &'static str;
}

/// Acceptance of finite words: the run ends in an accepting state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Finite;

/// Büchi acceptance: the run visits accepting states infinitely often.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Buchi;

impl Acceptance for Finite {
    const KIND: &'static str = "finitary";
}

impl Acceptance for Buchi {
    const KIND: &'static str = "buchi";
}

pub type FinAutomaton = Automaton<Finite>;
pub type BuchiAutomaton = Automaton<Buchi>;

#[derive(Clone, PartialEq, Eq)]
pub struct Automaton<K: Acceptance> {
    alphabet: Alphabet,
    names: Vec<String>,
    initial: Vec<StateId>,
    accepting: Vec<bool>,
    /// Per state, outgoing `(symbol, target)` pairs, sorted and deduplicated.
    delta: Vec<Vec<(Symbol, StateId)>>,
    kind: PhantomData<K>,
}

impl<K: Acceptance> Automaton<K> {
    /// The 0-state automaton; it accepts nothing.
    pub fn new(alphabet: Alphabet) -> Self {
        Automaton {
            alphabet,
            names: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
            delta: Vec::new(),
            kind: PhantomData,
        }
    }

    /// Builds an automaton from explicit parts, checking well-formedness.
    pub fn from_parts(
        alphabet: Alphabet,
        num_states: usize,
        initial: impl IntoIterator<Item = StateId>,
        accepting: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, Symbol, StateId)>,
    ) -> Result<Self> {
        let mut a = Self::new(alphabet);
        for _ in 0..num_states {
            a.add_state(false);
        }
        for q in accepting {
            a.check_state(q)?;
            a.accepting[q] = true;
        }
        for q in initial {
            a.check_state(q)?;
            a.add_initial(q);
        }
        for (p, s, q) in transitions {
            a.check_state(p)?;
            a.check_state(q)?;
            if !a.alphabet.contains(s) {
                return Err(Error::Malformed(format!("symbol index {} out of range", s.0)));
            }
            a.add_transition(p, s, q);
        }
        Ok(a)
    }

    fn check_state(&self, q: StateId) -> Result<()> {
        if q < self.num_states() {
            Ok(())
        } else {
            Err(Error::Malformed(format!("state {q} out of range")))
        }
    }

    pub fn add_state(&mut self, accepting: bool) -> StateId {
        let id = self.delta.len();
        self.names.push(format!("q{id}"));
        self.accepting.push(accepting);
        self.delta.push(Vec::new());
        id
    }

    pub fn add_named_state(&mut self, name: impl Into<String>, accepting: bool) -> StateId {
        let id = self.add_state(accepting);
        self.names[id] = name.into();
        id
    }

    pub fn add_initial(&mut self, q: StateId) {
        if let Err(pos) = self.initial.binary_search(&q) {
            self.initial.insert(pos, q);
        }
    }

    pub fn set_accepting(&mut self, q: StateId, accepting: bool) {
        self.accepting[q] = accepting;
    }

    pub fn add_transition(&mut self, from: StateId, symbol: Symbol, to: StateId) {
        let row = &mut self.delta[from];
        if let Err(pos) = row.binary_search(&(symbol, to)) {
            row.insert(pos, (symbol, to));
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(Vec::len).sum()
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.delta.len()
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        self.states().filter(move |&q| self.accepting[q])
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn rename_state(&mut self, q: StateId, name: impl Into<String>) {
        self.names[q] = name.into();
    }

    /// Outgoing `(symbol, target)` pairs of `q`, sorted.
    pub fn transitions(&self, q: StateId) -> &[(Symbol, StateId)] {
        &self.delta[q]
    }

    pub fn all_transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(p, row)| row.iter().map(move |&(s, q)| (p, s, q)))
    }

    pub fn successors(&self, q: StateId, symbol: Symbol) -> impl Iterator<Item = StateId> + '_ {
        let row = &self.delta[q];
        let start = row.partition_point(|&(s, _)| s < symbol);
        row[start..]
            .iter()
            .take_while(move |&&(s, _)| s == symbol)
            .map(|&(_, t)| t)
    }

    /// Successor set of a sorted state set.
    pub fn post(&self, states: &[StateId], symbol: Symbol) -> Vec<StateId> {
        let mut out: Vec<StateId> = states
            .iter()
            .flat_map(|&q| self.successors(q, symbol))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// States reachable from the initial states by reading `word`.
    pub fn run(&self, word: &[Symbol]) -> Vec<StateId> {
        word.iter()
            .fold(self.initial.clone(), |set, &s| self.post(&set, s))
    }

    /// At most one initial state and at most one successor per symbol.
    pub fn is_deterministic(&self) -> bool {
        self.initial.len() <= 1
            && self
                .delta
                .iter()
                .all(|row| row.windows(2).all(|w| w[0].0 != w[1].0))
    }

    pub fn reachable(&self) -> Vec<bool> {
        graph::forward_closure(self.num_states(), &self.initial, |q| {
            self.delta[q].iter().map(|&(_, t)| t)
        })
    }

    /// States from which some state in `targets` is reachable.
    pub fn coreachable(&self, targets: &[bool]) -> Vec<bool> {
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); self.num_states()];
        for (p, _, q) in self.all_transitions() {
            rev[q].push(p);
        }
        let seeds: Vec<StateId> = self.states().filter(|&q| targets[q]).collect();
        graph::forward_closure(self.num_states(), &seeds, |q| rev[q].iter().copied())
    }

    /// Keeps the states marked in `keep`, preserving their relative order.
    pub fn restrict(&self, keep: &[bool]) -> Self {
        let mut map = vec![None; self.num_states()];
        let mut out = Self::new(self.alphabet.clone());
        for q in self.states().filter(|&q| keep[q]) {
            map[q] = Some(out.add_named_state(self.names[q].clone(), self.accepting[q]));
        }
        for &q in &self.initial {
            if let Some(n) = map[q] {
                out.add_initial(n);
            }
        }
        for (p, s, q) in self.all_transitions() {
            if let (Some(np), Some(nq)) = (map[p], map[q]) {
                out.delta[np].push((s, nq));
            }
        }
        out
    }

    /// Same graph, read with a different acceptance condition.
    pub fn reinterpret<K2: Acceptance>(&self) -> Automaton<K2> {
        Automaton {
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            initial: self.initial.clone(),
            accepting: self.accepting.clone(),
            delta: self.delta.clone(),
            kind: PhantomData,
        }
    }

    /// Same graph with every state accepting.
    pub fn all_accepting(&self) -> Self {
        let mut out = self.clone();
        out.accepting.iter_mut().for_each(|a| *a = true);
        out
    }

    pub fn with_accepting(&self, accepting: &[bool]) -> Self {
        let mut out = self.clone();
        out.accepting = accepting.to_vec();
        out
    }

    /// Moves the automaton onto a larger alphabet containing every letter of
    /// the current one.
    pub fn extend_alphabet(&self, wider: &Alphabet) -> Result<Self> {
        let map = self.alphabet.embedding_into(wider);
        if let Some(pos) = map.iter().position(Option::is_none) {
            return Err(Error::UnknownSymbol(self.alphabet.letters()[pos].clone()));
        }
        let mut out = self.clone();
        out.alphabet = wider.clone();
        for row in &mut out.delta {
            for entry in row.iter_mut() {
                entry.0 = map[entry.0.index()].expect("checked above");
            }
            row.sort_unstable();
        }
        Ok(out)
    }

    pub fn kind(&self) -> &'static str {
        K::KIND
    }

    /// Shortest words from the initial states to every state (BFS over
    /// sorted symbols; `None` when unreachable).
    pub fn shortest_access_words(&self) -> Vec<Option<Word>> {
        graph::bfs_words(self.num_states(), &self.initial, |q| {
            self.delta[q].iter().copied()
        })
    }
}

impl<K: Acceptance> fmt::Debug for Automaton<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} automaton over {}", K::KIND, self.alphabet)?;
        for q in self.states() {
            let init = if self.initial.contains(&q) { "->" } else { "  " };
            let acc = if self.accepting[q] { "*" } else { " " };
            write!(f, "{init}{acc} {}:", self.names[q])?;
            for &(s, t) in &self.delta[q] {
                write!(f, " {}->{}", self.alphabet.name(s), self.names[t])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
