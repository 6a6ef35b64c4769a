//! Small explicit-graph helpers shared by the automata constructions.

use std::collections::VecDeque;

use crate::alphabet::{Symbol, Word};

use super::StateId;

pub(crate) fn forward_closure<I, F>(n: usize, seeds: &[StateId], mut next: F) -> Vec<bool>
where
    F: FnMut(StateId) -> I,
    I: Iterator<Item = StateId>,
{
    let mut seen = vec![false; n];
    let mut stack: Vec<StateId> = Vec::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(q) = stack.pop() {
        for t in next(q) {
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
    }
    seen
}

/// Breadth-first shortest words. Edges must be yielded in sorted symbol
/// order so the chosen words are the length-lexicographically least.
pub(crate) fn bfs_words<I, F>(n: usize, seeds: &[StateId], mut next: F) -> Vec<Option<Word>>
where
    F: FnMut(StateId) -> I,
    I: Iterator<Item = (Symbol, StateId)>,
{
    let mut parent: Vec<Option<(StateId, Symbol)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(q) = queue.pop_front() {
        for (sym, t) in next(q) {
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((q, sym));
                queue.push_back(t);
            }
        }
    }
    (0..n)
        .map(|q| {
            if !seen[q] {
                return None;
            }
            let mut word = Vec::new();
            let mut cur = q;
            while let Some((p, s)) = parent[cur] {
                word.push(s);
                cur = p;
            }
            word.reverse();
            Some(word)
        })
        .collect()
}

/// Tarjan's strongly connected components. Returns the component index of
/// every node; components are numbered in reverse topological order.
pub(crate) fn scc<F>(n: usize, mut next: F) -> Vec<usize>
where
    F: FnMut(StateId) -> Vec<StateId>,
{
    const UNSEEN: usize = usize::MAX;
    let succs: Vec<Vec<StateId>> = (0..n).map(&mut next).collect();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    // (node, next child position)
    let mut call: Vec<(StateId, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, pos)) = call.last() {
            if pos == 0 && index[v] == UNSEEN {
                index[v] = counter;
                low[v] = counter;
                counter += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if pos < succs[v].len() {
                let w = succs[v][pos];
                call.last_mut().expect("non-empty").1 += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    comp
}
