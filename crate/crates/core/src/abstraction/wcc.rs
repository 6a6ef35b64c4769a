use std::collections::{HashMap, VecDeque};

use super::{image_automaton, Homomorphism};
use crate::alphabet::{Symbol, Word};
use crate::automata::{language_equal, FinAutomaton, StateId};
use crate::error::{Error, Result};

/// A reachable pair of concrete and abstract residual states for which no
/// abstract continuation makes the two residuals agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WccViolation {
    /// State of the canonical automaton for `L`.
    pub state: StateId,
    /// State of the canonical automaton for `h(L)`.
    pub abstract_state: StateId,
    /// Shortest word of `L` leading to the pair.
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WccReport {
    pub closed: bool,
    pub violations: Vec<WccViolation>,
}

/// Decides whether `h` is weakly continuation-closed on the prefix-closed
/// language `L`: for every `w ∈ L` some `u` in the abstract residual
/// `h(w)\h(L)` satisfies `u\(h(w)\h(L)) = u\h(w\L)`.
///
/// Residuals of `L` only depend on the state `q` of its canonical automaton
/// and residuals of `h(L)` on the state `d` of the canonical automaton of the
/// image, so it suffices to check each reachable pair `(q, d)`.
pub fn is_weakly_continuation_closed(l: &FinAutomaton, h: &Homomorphism) -> Result<WccReport> {
    l.alphabet().ensure_same(h.source())?;
    let a = l.canonicalize();
    if !a.states().all(|q| a.is_accepting(q)) {
        return Err(Error::NotPrefixClosed);
    }
    let d = image_automaton(h, &a)?;
    let mut violations = Vec::new();
    for (q, dq, word) in synchronized_pairs(&a, &d, h) {
        let x = d.rebased(dq);
        let y = image_automaton(h, &a.rebased(q))?;
        if !has_agreeing_continuation(&x, &y)? {
            violations.push(WccViolation {
                state: q,
                abstract_state: dq,
                word,
            });
        }
    }
    Ok(WccReport {
        closed: violations.is_empty(),
        violations,
    })
}

/// Reachable `(q, d)` pairs with their shortest access words, in BFS order.
fn synchronized_pairs(
    a: &FinAutomaton,
    d: &FinAutomaton,
    h: &Homomorphism,
) -> Vec<(StateId, StateId, Word)> {
    let (Some(&qa), Some(&qd)) = (a.initial().first(), d.initial().first()) else {
        return Vec::new();
    };
    type Pair = (StateId, StateId);
    let mut parent: HashMap<Pair, Option<(Pair, Symbol)>> = HashMap::from([((qa, qd), None)]);
    let mut order = vec![(qa, qd)];
    let mut queue = VecDeque::from([(qa, qd)]);
    while let Some((q, dq)) = queue.pop_front() {
        for &(c, q2) in a.transitions(q) {
            let d2 = match h.apply(c) {
                None => dq,
                Some(img) => d
                    .successors(dq, img)
                    .next()
                    .expect("image automaton follows every concrete step"),
            };
            parent.entry((q2, d2)).or_insert_with(|| {
                order.push((q2, d2));
                queue.push_back((q2, d2));
                Some(((q, dq), c))
            });
        }
    }
    order
        .into_iter()
        .map(|pair| {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some(Some((prev, c))) = parent.get(&cur) {
                word.push(*c);
                cur = *prev;
            }
            word.reverse();
            (pair.0, pair.1, word)
        })
        .collect()
}

/// Whether some `u` readable in both deterministic automata leads to states
/// with equal residual languages. `L(y) ⊆ L(x)` and both are prefix-closed,
/// so `u` must be readable in `y`.
fn has_agreeing_continuation(x: &FinAutomaton, y: &FinAutomaton) -> Result<bool> {
    let (Some(&x0), Some(&y0)) = (x.initial().first(), y.initial().first()) else {
        return Ok(x.initial().is_empty() && y.initial().is_empty());
    };
    let mut seen = HashMap::from([((x0, y0), ())]);
    let mut queue = VecDeque::from([(x0, y0)]);
    while let Some((p, q)) = queue.pop_front() {
        if language_equal(&x.rebased(p), &y.rebased(q))? {
            return Ok(true);
        }
        for &(c, q2) in y.transitions(q) {
            if let Some(p2) = x.successors(p, c).next() {
                if seen.insert((p2, q2), ()).is_none() {
                    queue.push_back((p2, q2));
                }
            }
        }
    }
    Ok(false)
}
