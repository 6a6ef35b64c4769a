//! Tableau translation of formulas into Büchi automata: obligations in
//! negation normal form are expanded into covers, states are sets of
//! next-step obligations, and one acceptance set per `U` subformula is
//! degeneralized with a counter.

use std::collections::{BTreeSet, HashMap};

use super::{Formula, Labeling};
use crate::automata::BuchiAutomaton;

type Id = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(usize, bool),
    And(Id, Id),
    Or(Id, Id),
    Next(Id),
    Until(Id, Id),
    Release(Id, Id),
}

#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    props: Vec<String>,
}

impl Arena {
    fn mk(&mut self, n: Node) -> Id {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        self.nodes.push(n);
        self.index.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn prop(&mut self, p: &str) -> usize {
        match self.props.iter().position(|q| q == p) {
            Some(i) => i,
            None => {
                self.props.push(p.to_string());
                self.props.len() - 1
            }
        }
    }

    /// Negation normal form of `f` (negated when `neg`), with `U` and `R`
    /// as the only binary temporal operators.
    fn nnf(&mut self, f: &Formula, neg: bool) -> Id {
        use Formula as F;
        match f {
            F::True => self.mk(if neg { Node::False } else { Node::True }),
            F::Atom(p) => {
                let i = self.prop(p);
                self.mk(Node::Lit(i, !neg))
            }
            F::Not(g) => self.nnf(g, !neg),
            F::And(a, b) | F::Or(a, b) => {
                let (x, y) = (self.nnf(a, neg), self.nnf(b, neg));
                let conj = matches!(f, F::And(..)) != neg;
                self.mk(if conj { Node::And(x, y) } else { Node::Or(x, y) })
            }
            F::Implies(a, b) => {
                let (x, y) = (self.nnf(a, !neg), self.nnf(b, neg));
                self.mk(if neg { Node::And(x, y) } else { Node::Or(x, y) })
            }
            F::Iff(a, b) => {
                let (pa, na) = (self.nnf(a, false), self.nnf(a, true));
                let (pb, nb) = (self.nnf(b, false), self.nnf(b, true));
                let (l, r) = if neg {
                    (self.mk(Node::And(pa, nb)), self.mk(Node::And(na, pb)))
                } else {
                    (self.mk(Node::And(pa, pb)), self.mk(Node::And(na, nb)))
                };
                self.mk(Node::Or(l, r))
            }
            F::Next(g) => {
                let x = self.nnf(g, neg);
                self.mk(Node::Next(x))
            }
            F::Until(a, b) => {
                let (x, y) = (self.nnf(a, neg), self.nnf(b, neg));
                self.mk(if neg { Node::Release(x, y) } else { Node::Until(x, y) })
            }
            // a B b = !(!a U b) = a R !b
            F::Before(a, b) => {
                let (x, y) = (self.nnf(a, neg), self.nnf(b, !neg));
                self.mk(if neg { Node::Until(x, y) } else { Node::Release(x, y) })
            }
            F::Eventually(g) | F::Always(g) => {
                let x = self.nnf(g, neg);
                let lives = matches!(f, F::Eventually(_)) != neg;
                if lives {
                    let t = self.mk(Node::True);
                    self.mk(Node::Until(t, x))
                } else {
                    let ff = self.mk(Node::False);
                    self.mk(Node::Release(ff, x))
                }
            }
        }
    }
}

#[derive(Clone, Default)]
struct Cover {
    todo: Vec<Id>,
    done: BTreeSet<Id>,
    pos: BTreeSet<usize>,
    neg: BTreeSet<usize>,
    next: BTreeSet<Id>,
    postponed: BTreeSet<Id>,
}

/// A fully expanded way of meeting a set of obligations in one step.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Expanded {
    pos: BTreeSet<usize>,
    neg: BTreeSet<usize>,
    next: Vec<Id>,
    postponed: BTreeSet<Id>,
}

fn expand(arena: &Arena, obligations: &[Id]) -> Vec<Expanded> {
    let mut out = BTreeSet::new();
    let mut stack = vec![Cover {
        todo: obligations.to_vec(),
        ..Cover::default()
    }];
    'covers: while let Some(mut c) = stack.pop() {
        while let Some(id) = c.todo.pop() {
            if !c.done.insert(id) {
                continue;
            }
            match arena.nodes[id] {
                Node::True => {}
                Node::False => continue 'covers,
                Node::Lit(p, true) => {
                    if c.neg.contains(&p) {
                        continue 'covers;
                    }
                    c.pos.insert(p);
                }
                Node::Lit(p, false) => {
                    if c.pos.contains(&p) {
                        continue 'covers;
                    }
                    c.neg.insert(p);
                }
                Node::And(a, b) => c.todo.extend([a, b]),
                Node::Or(a, b) => {
                    let mut other = c.clone();
                    other.todo.push(b);
                    stack.push(other);
                    c.todo.push(a);
                }
                Node::Next(a) => {
                    c.next.insert(a);
                }
                Node::Until(a, b) => {
                    let mut other = c.clone();
                    other.todo.push(a);
                    other.next.insert(id);
                    other.postponed.insert(id);
                    stack.push(other);
                    c.todo.push(b);
                }
                Node::Release(a, b) => {
                    let mut other = c.clone();
                    other.todo.push(b);
                    other.next.insert(id);
                    stack.push(other);
                    c.todo.extend([a, b]);
                }
            }
        }
        out.insert(Expanded {
            pos: c.pos,
            neg: c.neg,
            next: c.next.into_iter().collect(),
            postponed: c.postponed,
        });
    }
    out.into_iter().collect()
}

fn untils_below(arena: &Arena, root: Id) -> Vec<Id> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![root];
    while let Some(id) = stack.pop() {
        if !seen.insert(id) {
            continue;
        }
        match arena.nodes[id] {
            Node::And(a, b) | Node::Or(a, b) | Node::Until(a, b) | Node::Release(a, b) => {
                stack.extend([a, b])
            }
            Node::Next(a) => stack.push(a),
            _ => {}
        }
    }
    seen.into_iter()
        .filter(|&id| matches!(arena.nodes[id], Node::Until(..)))
        .collect()
}

fn build(arena: &Arena, root: Id, lambda: &Labeling) -> BuchiAutomaton {
    let alphabet = lambda.alphabet().clone();
    let letter_props: Vec<Vec<bool>> = alphabet
        .symbols()
        .map(|s| arena.props.iter().map(|p| lambda.holds(s, p)).collect())
        .collect();
    let untils = untils_below(arena, root);
    let k = untils.len();

    let mut ids: HashMap<(Vec<Id>, usize), usize> = HashMap::new();
    let mut queue: Vec<(Vec<Id>, usize)> = Vec::new();
    let mut covers: HashMap<Vec<Id>, Vec<Expanded>> = HashMap::new();
    let mut edges: Vec<(usize, crate::alphabet::Symbol, usize)> = Vec::new();

    let is_true = |id: &Id| matches!(arena.nodes[*id], Node::True);
    let start = (vec![root].into_iter().filter(|id| !is_true(id)).collect(), 0);
    ids.insert(start.clone(), 0);
    queue.push(start);
    let mut head = 0;
    while head < queue.len() {
        let (set, j) = queue[head].clone();
        let from = head;
        head += 1;
        let expanded = covers
            .entry(set.clone())
            .or_insert_with(|| expand(arena, &set))
            .clone();
        for cover in &expanded {
            let mut j2 = if j == k { 0 } else { j };
            while j2 < k && !cover.postponed.contains(&untils[j2]) {
                j2 += 1;
            }
            let target = (cover.next.iter().copied().filter(|id| !is_true(id)).collect(), j2);
            let to = match ids.get(&target) {
                Some(&t) => t,
                None => {
                    let t = queue.len();
                    ids.insert(target.clone(), t);
                    queue.push(target);
                    t
                }
            };
            for s in alphabet.symbols() {
                let props = &letter_props[s.index()];
                if cover.pos.iter().all(|&p| props[p]) && cover.neg.iter().all(|&p| !props[p]) {
                    edges.push((from, s, to));
                }
            }
        }
    }
    let mut aut = BuchiAutomaton::new(alphabet);
    for (_, j) in &queue {
        aut.add_state(*j == k);
    }
    aut.add_initial(0);
    for (p, s, q) in edges {
        aut.add_transition(p, s, q);
    }
    aut.reduce()
}

/// Büchi automaton over `lambda`'s alphabet accepting the words satisfying `f`.
pub fn formula_automaton(f: &Formula, lambda: &Labeling) -> BuchiAutomaton {
    let mut arena = Arena::default();
    let root = arena.nnf(f, false);
    build(&arena, root, lambda)
}

/// Automata for a formula and for its negation.
#[derive(Debug, Clone)]
pub struct FormulaAutomata {
    pub positive: BuchiAutomaton,
    pub negative: BuchiAutomaton,
}

pub fn to_buchi(f: &Formula, lambda: &Labeling) -> FormulaAutomata {
    FormulaAutomata {
        positive: formula_automaton(f, lambda),
        negative: formula_automaton(&Formula::not(f.clone()), lambda),
    }
}
