use super::Formula;
use super::Formula::*;
use crate::alphabet::{Alphabet, EPS};
use crate::error::{Error, Result};

/// Which alphabet normal form is being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalForm {
    /// Positive, atoms are letters of the alphabet.
    Sigma,
    /// As `Sigma`, additionally allowing `eps` but only as the whole operand
    /// of `G`, i.e. in the subformula `G eps`.
    ExtendedSigma,
}

/// Pushes negations down to atoms and `true`, eliminating `->` and `<->`.
pub fn to_positive_normal_form(f: &Formula) -> Formula {
    pnf(f, false)
}

fn pnf(f: &Formula, neg: bool) -> Formula {
    let pos = |g: &Formula| pnf(g, false);
    let negd = |g: &Formula| pnf(g, true);
    match (f, neg) {
        (True, false) => True,
        (True, true) => Formula::not(True),
        (Atom(p), false) => Atom(p.clone()),
        (Atom(p), true) => Formula::not(Atom(p.clone())),
        (Not(g), _) => pnf(g, !neg),
        (And(a, b), false) => Formula::and(pos(a), pos(b)),
        (And(a, b), true) => Formula::or(negd(a), negd(b)),
        (Or(a, b), false) => Formula::or(pos(a), pos(b)),
        (Or(a, b), true) => Formula::and(negd(a), negd(b)),
        (Implies(a, b), false) => Formula::or(negd(a), pos(b)),
        (Implies(a, b), true) => Formula::and(pos(a), negd(b)),
        (Iff(a, b), false) => Formula::or(
            Formula::and(pos(a), pos(b)),
            Formula::and(negd(a), negd(b)),
        ),
        (Iff(a, b), true) => Formula::or(
            Formula::and(pos(a), negd(b)),
            Formula::and(negd(a), pos(b)),
        ),
        (Next(g), _) => Formula::next(pnf(g, neg)),
        (Until(a, b), false) => Formula::until(pos(a), pos(b)),
        (Until(a, b), true) => Formula::before(negd(a), pos(b)),
        (Before(a, b), false) => Formula::before(pos(a), pos(b)),
        (Before(a, b), true) => Formula::until(negd(a), pos(b)),
        (Eventually(g), false) => Formula::eventually(pos(g)),
        (Eventually(g), true) => Formula::always(negd(g)),
        (Always(g), false) => Formula::always(pos(g)),
        (Always(g), true) => Formula::eventually(negd(g)),
    }
}

/// Negation only directly above atoms or `true`, and no `->` / `<->`.
pub fn is_positive(f: &Formula) -> bool {
    match f {
        Not(g) => matches!(**g, Atom(_) | True),
        Implies(..) | Iff(..) => false,
        _ => f.children().into_iter().all(is_positive),
    }
}

/// Checks that `eps` occurs only as `G eps`.
pub(crate) fn eps_only_under_always(f: &Formula) -> bool {
    match f {
        Atom(p) => p != EPS,
        Always(g) if matches!(&**g, Atom(p) if p == EPS) => true,
        _ => f.children().into_iter().all(eps_only_under_always),
    }
}

pub fn check_normal_form(f: &Formula, alphabet: &Alphabet, mode: NormalForm) -> Result<()> {
    if !is_positive(f) {
        return Err(Error::NotNormalForm(format!("`{f}` is not in positive normal form")));
    }
    for p in f.atoms() {
        let ok = alphabet.symbol(&p).is_some() || (p == EPS && mode == NormalForm::ExtendedSigma);
        if !ok {
            return Err(Error::NotNormalForm(format!(
                "atomic proposition `{p}` is not a letter of {alphabet}"
            )));
        }
    }
    if mode == NormalForm::ExtendedSigma && !eps_only_under_always(f) {
        return Err(Error::NotNormalForm(format!(
            "`{EPS}` may only occur as `G {EPS}` in `{f}`"
        )));
    }
    Ok(())
}
