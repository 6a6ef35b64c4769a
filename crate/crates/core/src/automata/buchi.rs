use std::collections::{HashMap, VecDeque};

use crate::alphabet::Word;
use crate::error::Result;

use super::graph::{bfs_words, scc};
use super::{BuchiAutomaton, FinAutomaton, LassoWord, StateId};

impl BuchiAutomaton {
    /// States lying on a cycle that passes through an accepting state.
    fn cycle_states(&self) -> Vec<bool> {
        let comp = scc(self.num_states(), |q| {
            self.transitions(q).iter().map(|&(_, t)| t).collect()
        });
        let ncomp = comp.iter().max().map_or(0, |m| m + 1);
        let mut size = vec![0usize; ncomp];
        let mut has_acc = vec![false; ncomp];
        let mut has_loop = vec![false; ncomp];
        for q in self.states() {
            size[comp[q]] += 1;
            has_acc[comp[q]] |= self.is_accepting(q);
            has_loop[comp[q]] |= self.transitions(q).iter().any(|&(_, t)| t == q);
        }
        self.states()
            .map(|q| {
                let c = comp[q];
                has_acc[c] && (size[c] > 1 || has_loop[c])
            })
            .collect()
    }

    /// Drops every state from which no ω-word is accepted, and every
    /// unreachable state. The ω-language is unchanged.
    pub fn reduce(&self) -> BuchiAutomaton {
        let reach = self.reachable();
        let live = self.coreachable(&self.cycle_states());
        let keep: Vec<bool> = self.states().map(|q| reach[q] && live[q]).collect();
        self.restrict(&keep)
    }

    pub fn is_empty(&self) -> bool {
        self.reduce().initial().is_empty()
    }

    /// An accepted lasso, if any. The stem is as short as possible and,
    /// among those, the cycle; remaining ties go to the lexicographically
    /// smallest words. The result is normalized.
    pub fn find_accepted_lasso(&self) -> Option<LassoWord> {
        let r = self.reduce();
        if r.initial().is_empty() {
            return None;
        }
        let on_cycle = r.cycle_states();
        let access = r.shortest_access_words();
        let best_stem = r
            .states()
            .filter(|&q| on_cycle[q])
            .filter_map(|q| access[q].as_ref().map(Vec::len))
            .min()?;
        let key = |x: &LassoWord| (x.stem().len(), x.cycle().len(), x.stem().to_vec(), x.cycle().to_vec());
        let mut best: Option<(usize, LassoWord)> = None;
        for q in r.states().filter(|&q| on_cycle[q]) {
            let stem = match &access[q] {
                Some(w) if w.len() == best_stem => w,
                _ => continue,
            };
            let Some(cycle) = r.shortest_accepting_cycle(q) else {
                continue;
            };
            let len = cycle.len();
            let x = LassoWord::new(stem.clone(), cycle).expect("cycle is non-empty").normalized();
            let better = match &best {
                None => true,
                Some((bl, bx)) => (len, key(&x)) < (*bl, key(bx)),
            };
            if better {
                best = Some((len, x));
            }
        }
        best.map(|(_, x)| x)
    }

    /// Shortest non-empty word leading from `q` back to `q` through an
    /// accepting state.
    fn shortest_accepting_cycle(&self, q: StateId) -> Option<Word> {
        let n = self.num_states();
        let node = |s: StateId, f: bool| s * 2 + usize::from(f);
        let start = node(q, self.is_accepting(q));
        let target = node(q, true);
        let words = bfs_words(2 * n, &[start], |v| {
            let (s, f) = (v / 2, v % 2 == 1);
            self.transitions(s)
                .iter()
                .map(move |&(sym, t)| (sym, node(t, f || self.is_accepting(t))))
                .collect::<Vec<_>>()
                .into_iter()
        });
        if start == target {
            // Need a non-empty cycle: take one step and come back.
            let mut best: Option<Word> = None;
            for &(sym, t) in self.transitions(q) {
                let from = node(t, true);
                let back = bfs_words(2 * n, &[from], |v| {
                    let s = v / 2;
                    self.transitions(s)
                        .iter()
                        .map(move |&(sym, t)| (sym, node(t, true)))
                        .collect::<Vec<_>>()
                        .into_iter()
                });
                if let Some(rest) = &back[target] {
                    let mut w = vec![sym];
                    w.extend_from_slice(rest);
                    if best.as_ref().is_none_or(|b| (w.len(), &w) < (b.len(), b)) {
                        best = Some(w);
                    }
                }
            }
            return best;
        }
        words[target].clone()
    }

    /// Finitary automaton for the prefixes of the accepted ω-words: the
    /// reduced automaton with every state accepting.
    pub fn prefix_automaton(&self) -> FinAutomaton {
        self.reduce().all_accepting().reinterpret()
    }
}

/// Intersection of two Büchi automata by the two-phase product: phase 0
/// waits for an accepting state of `a`, phase 1 for one of `b`. When one
/// side accepts everywhere the phase is dropped and the other side's
/// acceptance is used directly.
pub fn product(a: &BuchiAutomaton, b: &BuchiAutomaton) -> Result<BuchiAutomaton> {
    a.alphabet().ensure_same(b.alphabet())?;
    type Key = (StateId, StateId, bool);
    let a_trivial = a.states().all(|p| a.is_accepting(p));
    let b_trivial = b.states().all(|q| b.is_accepting(q));
    let mut out = BuchiAutomaton::new(a.alphabet().clone());
    let mut index: HashMap<Key, StateId> = HashMap::new();
    let mut queue: VecDeque<Key> = VecDeque::new();
    let accepting = |(p, q, phase): Key| {
        if b_trivial {
            a.is_accepting(p)
        } else if a_trivial {
            b.is_accepting(q)
        } else {
            !phase && a.is_accepting(p)
        }
    };
    let mut intern = |key: Key, out: &mut BuchiAutomaton, queue: &mut VecDeque<Key>| {
        *index.entry(key).or_insert_with(|| {
            queue.push_back(key);
            let id = out.add_state(accepting(key));
            out.rename_state(id, format!("{}|{}|{}", a.state_name(key.0), b.state_name(key.1), u8::from(key.2)));
            id
        })
    };
    for &p in a.initial() {
        for &q in b.initial() {
            let id = intern((p, q, false), &mut out, &mut queue);
            out.add_initial(id);
        }
    }
    while let Some(key @ (p, q, phase)) = queue.pop_front() {
        let from = intern(key, &mut out, &mut queue);
        let next_phase = match phase {
            _ if a_trivial || b_trivial => false,
            false if a.is_accepting(p) => true,
            true if b.is_accepting(q) => false,
            other => other,
        };
        for &(s, p2) in a.transitions(p) {
            for q2 in b.successors(q, s) {
                let to = intern((p2, q2, next_phase), &mut out, &mut queue);
                out.add_transition(from, s, to);
            }
        }
    }
    Ok(out)
}

/// Whether the ω-word `stem·cycle^ω` is accepted, decided by intersecting
/// with the one-lasso automaton and testing emptiness.
pub fn lasso_membership(x: &LassoWord, b: &BuchiAutomaton) -> bool {
    if x.letters().any(|s| !b.alphabet().contains(s)) {
        return false;
    }
    let lasso = x.automaton(b.alphabet().clone());
    product(b, &lasso).map(|p| !p.is_empty()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{Alphabet, Symbol};
    use crate::automata::product_fin;

    const A: Symbol = Symbol(0);
    const B: Symbol = Symbol(1);

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn a_omega() -> BuchiAutomaton {
        BuchiAutomaton::from_parts(ab(), 1, [0], [0], [(0, A, 0)]).unwrap()
    }

    /// □◇a: state 1 is entered on a.
    fn inf_a() -> BuchiAutomaton {
        BuchiAutomaton::from_parts(ab(), 2, [0], [1], [(0, A, 1), (0, B, 0), (1, A, 1), (1, B, 0)]).unwrap()
    }

    fn universal() -> BuchiAutomaton {
        BuchiAutomaton::from_parts(ab(), 1, [0], [0], [(0, A, 0), (0, B, 0)]).unwrap()
    }

    fn lasso(stem: &[Symbol], cycle: &[Symbol]) -> LassoWord {
        LassoWord::new(stem.to_vec(), cycle.to_vec()).unwrap()
    }

    #[test]
    fn reduce_drops_dead_trap() {
        let b = BuchiAutomaton::from_parts(ab(), 2, [0], [0], [(0, A, 0), (0, B, 1)]).unwrap();
        let r = b.reduce();
        assert_eq!(r.num_states(), 1);
        assert_eq!(r.reduce(), r);
    }

    #[test]
    fn emptiness_and_witness() {
        assert!(BuchiAutomaton::new(ab()).is_empty());
        assert_eq!(BuchiAutomaton::new(ab()).find_accepted_lasso(), None);
        let w = a_omega().find_accepted_lasso().unwrap();
        assert_eq!(w, lasso(&[], &[A]));
        // b-loop then a-loop: witness keeps the short stem
        let b = BuchiAutomaton::from_parts(ab(), 2, [0], [1], [(0, B, 0), (0, A, 1), (1, A, 1)]).unwrap();
        assert_eq!(b.find_accepted_lasso().unwrap(), lasso(&[A], &[A]).normalized());
    }

    #[test]
    fn prefix_automaton_of_a_star_b_omega() {
        // a*·b^ω
        let b = BuchiAutomaton::from_parts(ab(), 2, [0], [1], [(0, A, 0), (0, B, 1), (1, B, 1)]).unwrap();
        let pre = b.prefix_automaton();
        assert!(pre.accepts(&[A, A, B, B]));
        assert!(!pre.accepts(&[B, A]));
        assert!(a_omega().prefix_automaton().accepts(&[A, A, A]));
        assert_eq!(BuchiAutomaton::new(ab()).prefix_automaton().canonicalize().num_states(), 0);
        let _ = product_fin(&pre, &pre).unwrap();
    }

    #[test]
    fn products() {
        let p = product(&universal(), &inf_a()).unwrap();
        assert!(lasso_membership(&lasso(&[], &[A, B]), &p));
        assert!(!lasso_membership(&lasso(&[A], &[B]), &p));
        assert!(product(&a_omega(), &BuchiAutomaton::from_parts(ab(), 1, [0], [0], [(0, B, 0)]).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn membership_examples() {
        assert!(lasso_membership(&lasso(&[], &[A, B]), &inf_a()));
        assert!(!lasso_membership(&lasso(&[], &[B]), &inf_a()));
        assert!(lasso_membership(&lasso(&[B, A], &[B, B, A]), &universal()));
    }
}
