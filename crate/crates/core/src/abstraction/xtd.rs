use super::Homomorphism;
use crate::alphabet::PAD;
use crate::automata::FinAutomaton;
use crate::error::{Error, Result};

/// Which words get padded with `#` by [`compute_xtd`].
#[derive(Debug, Clone, Copy)]
pub enum Extension<'a> {
    /// Maximal words of `L`: `xtd(L) = L ∪ max(L)·#*`.
    Plain,
    /// Words of `L` whose continuations are all erased by `h`:
    /// `L ∪ { w ∈ L | h(w\L) = {ε} }·#*`.
    Relative(&'a Homomorphism),
}

/// Extends `L` by `#`-tails so that its limit keeps track of words that
/// cannot (or, seen through `h`, visibly cannot) be continued. The result is
/// over the alphabet with `#` added.
pub fn compute_xtd(l: &FinAutomaton, variant: Extension<'_>) -> Result<FinAutomaton> {
    if l.alphabet().has_pad() {
        return Err(Error::InvalidAlphabet(format!(
            "`{PAD}` is already a letter of {}",
            l.alphabet()
        )));
    }
    let a = l.canonicalize();
    let padded = l.alphabet().padded();
    let mut out = a.extend_alphabet(&padded)?;
    let pad = padded.lookup(PAD)?;
    match variant {
        Extension::Plain => {
            for q in a.maximal_states() {
                out.add_transition(q, pad, q);
            }
        }
        Extension::Relative(h) => {
            a.alphabet().ensure_same(h.source())?;
            let visible: Vec<bool> = a
                .states()
                .map(|q| a.transitions(q).iter().any(|&(s, _)| !h.is_hidden(s)))
                .collect();
            let sees_visible = a.coreachable(&visible);
            let quiet: Vec<_> = a
                .states()
                .filter(|&q| a.is_accepting(q) && !sees_visible[q])
                .collect();
            // A separate sink, so that hidden letters cannot follow `#`.
            if !quiet.is_empty() {
                let sink = out.add_state(true);
                out.add_transition(sink, pad, sink);
                for q in quiet {
                    out.add_transition(q, pad, sink);
                }
            }
        }
    }
    Ok(out.canonicalize())
}
