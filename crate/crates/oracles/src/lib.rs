//! Slow, direct reference implementations for cross-checking the decision
//! procedures of `faircheck`. They only read automata through their
//! transition tables and never call the library's products, emptiness
//! checks, determinization or homomorphic images.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use faircheck::abstraction::Homomorphism;
use faircheck::automata::{Acceptance, Automaton, BuchiAutomaton, FinAutomaton, StateId};
use faircheck::pltl::{Formula, Labeling};
use faircheck::{LassoWord, Symbol, Word};

type Graph = Vec<Vec<usize>>;

fn reach_from(g: &Graph, start: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; g.len()];
    let mut stack: Vec<usize> = start.to_vec();
    for &s in start {
        seen[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &g[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Whether some node that satisfies `good` is reachable from `start` and lies
/// on a cycle (a path of length at least one back to itself).
fn good_cycle_reachable(g: &Graph, start: &[usize], good: impl Fn(usize) -> bool) -> bool {
    let reach = reach_from(g, start);
    (0..g.len()).any(|v| reach[v] && good(v) && reach_from(g, &g[v])[v])
}

/// Lasso membership by simulating the automaton along the lasso positions.
pub fn lasso_accepts(a: &BuchiAutomaton, x: &LassoWord) -> bool {
    let n = x.stem().len() + x.cycle().len();
    let succ = |i: usize| if i + 1 == n { x.stem().len() } else { i + 1 };
    let node = |q: StateId, i: usize| q * n + i;
    let mut g: Graph = vec![Vec::new(); a.num_states() * n];
    for q in a.states() {
        for i in 0..n {
            for t in a.successors(q, x.at(i)) {
                g[node(q, i)].push(node(t, succ(i)));
            }
        }
    }
    let start: Vec<usize> = a.initial().iter().map(|&q| node(q, 0)).collect();
    good_cycle_reachable(&g, &start, |v| a.is_accepting(v / n))
}

/// Semantics of PLTL by unfolding the definitions on lasso positions.
pub fn formula_holds(x: &LassoWord, lambda: &Labeling, f: &Formula) -> bool {
    holds_at(x, lambda, f, 0)
}

fn holds_at(x: &LassoWord, lambda: &Labeling, f: &Formula, i: usize) -> bool {
    let (s, c) = (x.stem().len(), x.cycle().len());
    // Positions beyond `i + s + c` repeat ones already seen from `i`.
    let horizon = i + s + c;
    let h = |g: &Formula, j: usize| holds_at(x, lambda, g, j);
    match f {
        Formula::True => true,
        Formula::Atom(p) => lambda.holds(x.at(i), p),
        Formula::Not(g) => !h(g, i),
        Formula::And(a, b) => h(a, i) && h(b, i),
        Formula::Or(a, b) => h(a, i) || h(b, i),
        Formula::Implies(a, b) => !h(a, i) || h(b, i),
        Formula::Iff(a, b) => h(a, i) == h(b, i),
        Formula::Next(g) => h(g, i + 1),
        Formula::Until(a, b) => until_at(i, horizon, |j| h(a, j), |j| h(b, j)),
        Formula::Before(a, b) => !until_at(i, horizon, |j| !h(a, j), |j| h(b, j)),
        Formula::Eventually(g) => (i..=horizon).any(|j| h(g, j)),
        Formula::Always(g) => (i..=horizon).all(|j| h(g, j)),
    }
}

fn until_at(i: usize, horizon: usize, stay: impl Fn(usize) -> bool, goal: impl Fn(usize) -> bool) -> bool {
    for j in i..=horizon {
        if goal(j) {
            return true;
        }
        if !stay(j) {
            return false;
        }
    }
    false
}

fn post<K: Acceptance>(a: &Automaton<K>, set: &BTreeSet<StateId>, s: Symbol) -> BTreeSet<StateId> {
    set.iter().flat_map(|&q| a.successors(q, s).collect::<Vec<_>>()).collect()
}

/// The set of states from which some ω-word is accepted.
fn live_states(a: &BuchiAutomaton) -> Vec<bool> {
    let g: Graph = a
        .states()
        .map(|q| a.transitions(q).iter().map(|&(_, t)| t).collect())
        .collect();
    a.states()
        .map(|q| good_cycle_reachable(&g, &[q], |v| a.is_accepting(v)))
        .collect()
}

/// Pairs of states of `a` and `b` from which a common ω-word is accepted by both.
fn live_pairs(a: &BuchiAutomaton, b: &BuchiAutomaton) -> HashSet<(StateId, StateId)> {
    let nb = b.num_states();
    let id = |p: StateId, q: StateId| p * nb + q;
    let mut g: Graph = vec![Vec::new(); a.num_states() * nb];
    for p in a.states() {
        for q in b.states() {
            for &(s, p2) in a.transitions(p) {
                for q2 in b.successors(q, s) {
                    g[id(p, q)].push(id(p2, q2));
                }
            }
        }
    }
    // A good cycle meets an accepting state of `a` and, in the same strongly
    // connected part, one of `b`.
    let mut live = HashSet::new();
    let reach: Vec<Vec<bool>> = (0..g.len()).map(|v| reach_from(&g, &g[v])).collect();
    let on_good_cycle: Vec<bool> = (0..g.len())
        .map(|v| {
            a.is_accepting(v / nb)
                && (0..g.len()).any(|u| b.is_accepting(u % nb) && reach[v][u] && reach[u][v])
        })
        .collect();
    for v in 0..g.len() {
        let r = reach_from(&g, &[v]);
        if (0..g.len()).any(|u| r[u] && on_good_cycle[u]) {
            live.insert((v / nb, v % nb));
        }
    }
    live
}

/// Relative liveness from its definition: every finite prefix of an
/// accepted word of `system` extends to an accepted word of `system` that
/// `property` also accepts. Prefixes are explored breadth-first and merged
/// when they reach the same sets of states, which makes the search exact.
/// Returns a shortest bad prefix.
pub fn relative_liveness_counterexample(system: &BuchiAutomaton, property: &BuchiAutomaton) -> Option<Word> {
    let live = live_states(system);
    let good = live_pairs(system, property);
    type Node = (BTreeSet<StateId>, BTreeSet<(StateId, StateId)>);
    let start_sys: BTreeSet<_> = system.initial().iter().copied().collect();
    let start_pair: BTreeSet<_> = system
        .initial()
        .iter()
        .flat_map(|&p| property.initial().iter().map(move |&q| (p, q)))
        .collect();
    let mut seen: HashSet<Node> = HashSet::new();
    let mut queue: VecDeque<(Node, Word)> = VecDeque::from([((start_sys, start_pair), Vec::new())]);
    while let Some(((sys, pairs), w)) = queue.pop_front() {
        if !seen.insert((sys.clone(), pairs.clone())) {
            continue;
        }
        if !sys.iter().any(|&q| live[q]) {
            continue;
        }
        if !pairs.iter().any(|pq| good.contains(pq)) {
            return Some(w);
        }
        for s in system.alphabet().symbols() {
            let sys2 = post(system, &sys, s);
            let pairs2: BTreeSet<_> = pairs
                .iter()
                .flat_map(|&(p, q)| {
                    let qs: Vec<_> = property.successors(q, s).collect();
                    system
                        .successors(p, s)
                        .flat_map(move |p2| qs.clone().into_iter().map(move |q2| (p2, q2)))
                        .collect::<Vec<_>>()
                })
                .collect();
            let mut w2 = w.clone();
            w2.push(s);
            queue.push_back(((sys2, pairs2), w2));
        }
    }
    None
}

/// Finite-word acceptance from a set of states of `a`, where letters hidden
/// by `h` may be taken freely before, between and after the visible ones.
struct Hidden<'a> {
    a: &'a FinAutomaton,
    h: &'a Homomorphism,
}

impl Hidden<'_> {
    fn close(&self, set: BTreeSet<StateId>) -> BTreeSet<StateId> {
        let mut out = set.clone();
        let mut stack: Vec<StateId> = set.into_iter().collect();
        while let Some(q) = stack.pop() {
            for &(s, t) in self.a.transitions(q) {
                if self.h.is_hidden(s) && out.insert(t) {
                    stack.push(t);
                }
            }
        }
        out
    }

    /// Reads the visible letter `c` of the target alphabet.
    fn step(&self, set: &BTreeSet<StateId>, c: Symbol) -> BTreeSet<StateId> {
        let mut next = BTreeSet::new();
        for &q in set {
            for &(s, t) in self.a.transitions(q) {
                if self.h.apply(s) == Some(c) {
                    next.insert(t);
                }
            }
        }
        self.close(next)
    }

    fn accepts_here(&self, set: &BTreeSet<StateId>) -> bool {
        set.iter().any(|&q| self.a.is_accepting(q))
    }

    fn equivalent(&self, x: &BTreeSet<StateId>, y: &BTreeSet<StateId>) -> bool {
        let mut seen = HashSet::new();
        let mut stack = vec![(x.clone(), y.clone())];
        while let Some((p, q)) = stack.pop() {
            if !seen.insert((p.clone(), q.clone())) {
                continue;
            }
            if self.accepts_here(&p) != self.accepts_here(&q) {
                return false;
            }
            for c in self.h.target().symbols() {
                let (p2, q2) = (self.step(&p, c), self.step(&q, c));
                if !p2.is_empty() || !q2.is_empty() {
                    stack.push((p2, q2));
                }
            }
        }
        true
    }
}

/// Weak continuation-closure from the definition: for each `w ∈ L` look for
/// a `u ∈ h(w)\h(L)` with `u\(h(w)\h(L)) = u\h(w\L)`, representing all
/// languages by sets of states of the given automaton read through `h`.
/// Returns a shortest word `w` for which no such `u` exists.
pub fn wcc_counterexample(l: &FinAutomaton, h: &Homomorphism) -> Option<Word> {
    let hidden = Hidden { a: l, h };
    let init: BTreeSet<StateId> = l.initial().iter().copied().collect();
    // (states after w, states after any v with h(v) = h(w))
    type Node = (BTreeSet<StateId>, BTreeSet<StateId>);
    let start: Node = (init.clone(), hidden.close(init));
    let mut seen: HashSet<Node> = HashSet::new();
    let mut queue = VecDeque::from([(start, Vec::new())]);
    let mut verdicts: HashMap<Node, bool> = HashMap::new();
    while let Some(((conc, abst), w)) = queue.pop_front() {
        if !seen.insert((conc.clone(), abst.clone())) {
            continue;
        }
        if !conc.iter().any(|&q| l.is_accepting(q)) {
            continue;
        }
        let key = (conc.clone(), abst.clone());
        let ok = *verdicts
            .entry(key)
            .or_insert_with(|| exists_agreeing_u(&hidden, &abst, &hidden.close(conc.clone())));
        if !ok {
            return Some(w);
        }
        for s in l.alphabet().symbols() {
            let conc2: BTreeSet<_> = conc.iter().flat_map(|&q| l.successors(q, s).collect::<Vec<_>>()).collect();
            if conc2.is_empty() {
                continue;
            }
            let abst2 = match h.apply(s) {
                None => abst.clone(),
                Some(c) => hidden.step(&abst, c),
            };
            let mut w2 = w.clone();
            w2.push(s);
            queue.push_back(((conc2, abst2), w2));
        }
    }
    None
}

fn exists_agreeing_u(hidden: &Hidden<'_>, x: &BTreeSet<StateId>, y: &BTreeSet<StateId>) -> bool {
    let mut seen = HashSet::new();
    let mut stack = vec![(x.clone(), y.clone())];
    while let Some((p, q)) = stack.pop() {
        if !seen.insert((p.clone(), q.clone())) {
            continue;
        }
        if hidden.accepts_here(&p) && hidden.equivalent(&p, &q) {
            return true;
        }
        for c in hidden.h.target().symbols() {
            let p2 = hidden.step(&p, c);
            if !p2.is_empty() {
                stack.push((p2, hidden.step(&q, c)));
            }
        }
    }
    false
}

/// A lasso `x` accepted by `system` with `h(x) = target`, found by
/// searching the product of the system with the positions of `target`:
/// hidden letters keep the position, visible ones must match it. Cycles are
/// shortest returns to a product node, so for general Büchi automata the
/// search is incomplete; on limits of transition systems it is exact.
pub fn preimage_lasso(system: &BuchiAutomaton, h: &Homomorphism, target: &LassoWord) -> Option<LassoWord> {
    let n = target.stem().len() + target.cycle().len();
    let succ = |i: usize| if i + 1 == n { target.stem().len() } else { i + 1 };
    type Node = (StateId, usize);
    let step = |(q, i): Node| -> Vec<(Symbol, Node)> {
        let mut out = Vec::new();
        for &(s, t) in system.transitions(q) {
            match h.apply(s) {
                None => out.push((s, (t, i))),
                Some(c) if c == target.at(i) => out.push((s, (t, succ(i)))),
                Some(_) => {}
            }
        }
        out
    };
    let starts: Vec<Node> = system.initial().iter().map(|&q| (q, 0)).collect();
    for (v, stem) in bfs_paths(&starts, &step) {
        let mut best: Option<LassoWord> = None;
        for (s0, first) in step(v) {
            let Some((_, rest)) = bfs_paths(&[first], &step).into_iter().find(|(u, _)| *u == v) else {
                continue;
            };
            let mut cycle = vec![s0];
            cycle.extend(rest);
            let x = LassoWord::new(stem.clone(), cycle).expect("non-empty cycle");
            let visible = x.cycle().iter().any(|&s| !h.is_hidden(s));
            if visible && lasso_accepts(system, &x) && best.as_ref().is_none_or(|b| x.size() < b.size()) {
                best = Some(x);
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

fn bfs_paths<N, F>(starts: &[N], step: &F) -> Vec<(N, Word)>
where
    N: Copy + Eq + std::hash::Hash,
    F: Fn(N) -> Vec<(Symbol, N)>,
{
    let mut seen: HashSet<N> = HashSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<(N, Word)> = starts.iter().map(|&s| (s, Vec::new())).collect();
    while let Some((v, w)) = queue.pop_front() {
        if !seen.insert(v) {
            continue;
        }
        for (s, u) in step(v) {
            let mut w2 = w.clone();
            w2.push(s);
            queue.push_back((u, w2));
        }
        out.push((v, w));
    }
    out
}
