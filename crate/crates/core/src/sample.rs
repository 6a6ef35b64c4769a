//! Seeded random generators for systems, formulas, lassos and homomorphisms,
//! used by the property suites.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::abstraction::Homomorphism;
use crate::alphabet::{Alphabet, Symbol};
use crate::automata::{BuchiAutomaton, FinAutomaton, LassoWord};
use crate::pltl::Formula;

/// Environment variable overriding the default seed of the sampling suites.
pub const SEED_VAR: &str = "FAIRCHECK_SEED";

/// The seed from `FAIRCHECK_SEED`, or `default` when unset or unparsable.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// The alphabet `{a, b, c, ...}` with `n` letters.
pub fn letters(n: usize) -> Alphabet {
    Alphabet::new((0..n).map(|i| char::from(b'a' + i as u8).to_string())).expect("1..=26 letters")
}

/// A deterministic transition system (every state accepting) with up to
/// `max_states` states; each state/letter pair gets a transition with
/// probability `density`.
pub fn random_lts(rng: &mut StdRng, alphabet: &Alphabet, max_states: usize, density: f64) -> FinAutomaton {
    let n = rng.gen_range(1..=max_states);
    let mut a = FinAutomaton::new(alphabet.clone());
    for _ in 0..n {
        a.add_state(true);
    }
    a.add_initial(0);
    for q in 0..n {
        for s in alphabet.symbols() {
            if rng.gen_bool(density) {
                a.add_transition(q, s, rng.gen_range(0..n));
            }
        }
    }
    a
}

/// A nondeterministic Büchi automaton with one initial state.
pub fn random_buchi(rng: &mut StdRng, alphabet: &Alphabet, max_states: usize) -> BuchiAutomaton {
    let n = rng.gen_range(1..=max_states);
    let mut a = BuchiAutomaton::new(alphabet.clone());
    for _ in 0..n {
        a.add_state(rng.gen_bool(0.4));
    }
    a.add_initial(0);
    for q in 0..n {
        for s in alphabet.symbols() {
            for _ in 0..rng.gen_range(0..=2) {
                a.add_transition(q, s, rng.gen_range(0..n));
            }
        }
    }
    a
}

/// An ω-behavior: usually the limit of a random transition system,
/// otherwise a random Büchi automaton.
pub fn random_system(rng: &mut StdRng, alphabet: &Alphabet, max_states: usize) -> BuchiAutomaton {
    if rng.gen_bool(0.6) {
        random_lts(rng, alphabet, max_states, 0.7)
            .limit()
            .expect("all states accepting")
    } else {
        random_buchi(rng, alphabet, max_states)
    }
}

/// A random formula over `atoms` with nesting depth at most `depth`.
pub fn random_formula(rng: &mut StdRng, atoms: &[String], depth: usize) -> Formula {
    if depth <= 1 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.1) {
            Formula::True
        } else {
            Formula::Atom(atoms.choose(rng).expect("non-empty").clone())
        };
    }
    let sub = |rng: &mut StdRng| random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..11) {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 => Formula::iff(sub(rng), sub(rng)),
        5 => Formula::next(sub(rng)),
        6 => Formula::until(sub(rng), sub(rng)),
        7 => Formula::before(sub(rng), sub(rng)),
        8 => Formula::eventually(sub(rng)),
        9 => Formula::always(sub(rng)),
        _ => Formula::not(sub(rng)),
    }
}

/// A formula in extended normal form over `atoms`: positive, and `eps`
/// only as `G eps`, which is used as a leaf with probability `eps_leaf`.
pub fn random_extended_formula(rng: &mut StdRng, atoms: &[String], depth: usize, eps_leaf: f64) -> Formula {
    if depth <= 1 || rng.gen_bool(0.2) {
        if depth >= 2 && rng.gen_bool(eps_leaf) {
            return Formula::always(Formula::eps());
        }
        let atom = Formula::Atom(atoms.choose(rng).expect("non-empty").clone());
        return if rng.gen_bool(0.3) { Formula::not(atom) } else { atom };
    }
    let sub = |rng: &mut StdRng| random_extended_formula(rng, atoms, depth - 1, eps_leaf);
    match rng.gen_range(0..7) {
        0 => Formula::and(sub(rng), sub(rng)),
        1 => Formula::or(sub(rng), sub(rng)),
        2 => Formula::next(sub(rng)),
        3 => Formula::until(sub(rng), sub(rng)),
        4 => Formula::before(sub(rng), sub(rng)),
        5 => Formula::eventually(sub(rng)),
        _ => Formula::always(sub(rng)),
    }
}

pub fn random_word(rng: &mut StdRng, alphabet: &Alphabet, len: usize) -> Vec<Symbol> {
    (0..len)
        .map(|_| Symbol(rng.gen_range(0..alphabet.len() as u32)))
        .collect()
}

/// A lasso with `|stem| + |cycle| <= max_size` (and at least one cycle letter).
pub fn random_lasso(rng: &mut StdRng, alphabet: &Alphabet, max_size: usize) -> LassoWord {
    let size = rng.gen_range(1..=max_size.max(1));
    let cycle_len = rng.gen_range(1..=size);
    let stem = random_word(rng, alphabet, size - cycle_len);
    let cycle = random_word(rng, alphabet, cycle_len);
    LassoWord::new(stem, cycle).expect("non-empty cycle")
}

/// Random map from `source` into `target ∪ {ε}` hiding each letter with
/// probability `hide`; at least one letter stays visible.
pub fn random_hom(rng: &mut StdRng, source: &Alphabet, target: &Alphabet, hide: f64) -> Homomorphism {
    let mut map: Vec<Option<Symbol>> = source
        .symbols()
        .map(|_| {
            if rng.gen_bool(hide) {
                None
            } else {
                Some(Symbol(rng.gen_range(0..target.len() as u32)))
            }
        })
        .collect();
    if map.iter().all(Option::is_none) {
        let i = rng.gen_range(0..map.len());
        map[i] = Some(Symbol(rng.gen_range(0..target.len() as u32)));
    }
    Homomorphism::new(source.clone(), target.clone(), map).expect("valid map")
}
