use super::{
    compute_xtd, image_automaton, inverse_image_buchi, is_weakly_continuation_closed, Extension, Homomorphism,
    WccReport,
};
use crate::alphabet::{EPS, PAD};
use crate::automata::{product, BuchiAutomaton, FinAutomaton};
use crate::error::{Error, Result};
use crate::pltl::{check_normal_form, transform, Formula, Labeling, NormalForm, Transform};
use crate::relprops::{is_relative_liveness, Property, Verdict};

/// `L, λ ⊨ f` within fairness for a finitary `L`, via `lim(xtd(L))` with `#`
/// labelled `eps`. `L` need not be prefix-closed.
pub fn within_fairness_finitary(l: &FinAutomaton, lambda: &Labeling, f: &Formula) -> Result<Verdict> {
    l.alphabet().ensure_same(lambda.alphabet())?;
    let system = compute_xtd(l, Extension::Plain)?.eilenberg_limit();
    let p = Property::from_formula(f, &lambda.eps_extension());
    is_relative_liveness(&system, &p)
}

#[derive(Debug, Clone)]
pub struct PreserveReport {
    pub wcc: WccReport,
    /// `η` within fairness on `h(L)`.
    pub abstract_verdict: Verdict,
    /// The translated formula within fairness on `L` padded relative to `h`.
    pub concrete_verdict: Verdict,
    /// Formula checked on the concrete side, over the letters of `h(L)`,
    /// `eps` and `#`.
    pub concrete_formula: Formula,
    pub abstract_holds: bool,
    pub concrete_holds: bool,
    /// The two verdicts are guaranteed to agree because `h` is weakly
    /// continuation-closed on `L`.
    pub equivalence_certified: bool,
    /// `h(L)` has no maximal words and no word of `L` needed padding, so a
    /// concrete success carries over to the abstraction even without closure.
    pub concrete_implies_abstract: bool,
}

/// Checks `η` within fairness on the abstraction `h(L)` and its translation
/// on `L` itself, and whether the two are known to agree.
///
/// On the concrete side `#` is kept as a letter of its own: `L` is padded
/// where `h` erases the whole future, `h` is lifted by `#↦#`, and `eps` in
/// `η` (which abstractly labels `#`) is renamed to `#` before translating.
/// Concrete behaviors whose image is undefined (finitely many visible
/// letters) are left out; the padding keeps all their prefixes.
pub fn preserve_check(l: &FinAutomaton, h: &Homomorphism, eta: &Formula) -> Result<PreserveReport> {
    l.alphabet().ensure_same(h.source())?;
    if !l.is_prefix_closed() {
        return Err(Error::NotPrefixClosed);
    }
    check_normal_form(eta, h.target(), NormalForm::ExtendedSigma)?;
    let wcc = is_weakly_continuation_closed(l, h)?;

    let image = image_automaton(h, l)?;
    let abstract_verdict = within_fairness_finitary(&image, &Labeling::canonical(h.target()), eta)?;

    let lifted = h.lifted();
    let concrete_formula = transform(&eta.rename_atom(EPS, PAD), Transform::R)?;
    let extended = compute_xtd(l, Extension::Relative(h))?;
    let pad = extended.alphabet().lookup(PAD)?;
    let was_padded = extended.all_transitions().any(|(_, s, _)| s == pad);
    let padded = extended.eilenberg_limit();
    let system = product(&padded, &defined_images(&lifted)?)?.reduce();
    let p = Property::from_formula(&concrete_formula, &lifted.labeling());
    let concrete_verdict = is_relative_liveness(&system, &p)?;

    Ok(PreserveReport {
        abstract_holds: abstract_verdict.holds,
        concrete_holds: concrete_verdict.holds,
        equivalence_certified: wcc.closed,
        concrete_implies_abstract: !image.has_maximal_words() && !was_padded,
        wcc,
        abstract_verdict,
        concrete_verdict,
        concrete_formula,
    })
}

/// Words with infinitely many letters not erased by `h`.
fn defined_images(h: &Homomorphism) -> Result<BuchiAutomaton> {
    let mut all = BuchiAutomaton::new(h.target().clone());
    let q = all.add_state(true);
    all.add_initial(q);
    for s in h.target().symbols() {
        all.add_transition(q, s, q);
    }
    inverse_image_buchi(h, &all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::pltl::parse_formula;

    fn eps_or_a() -> FinAutomaton {
        let s = Alphabet::new(["a"]).unwrap();
        FinAutomaton::from_parts(s.clone(), 2, [0], [0, 1], [(0, s.lookup("a").unwrap(), 1)]).unwrap()
    }

    #[test]
    fn finitary_within_fairness() {
        let l = eps_or_a();
        let lab = Labeling::canonical(l.alphabet());
        let f = parse_formula("G (eps | a)").unwrap();
        assert!(within_fairness_finitary(&l, &lab, &f).unwrap().holds);
        let only_eps = FinAutomaton::from_parts(l.alphabet().clone(), 1, [0], [0], []).unwrap();
        let fa = parse_formula("F a").unwrap();
        assert!(!within_fairness_finitary(&only_eps, &lab, &fa).unwrap().holds);
    }

    #[test]
    fn hidden_forever_is_not_a_behavior() {
        let s = Alphabet::new(["a", "c"]).unwrap();
        let t: Vec<_> = s.symbols().map(|c| (0, c, 0)).collect();
        let l = FinAutomaton::from_parts(s.clone(), 1, [0], [0], t).unwrap();
        let h = Homomorphism::from_pairs(&s, &Alphabet::new(["a", "b"]).unwrap(), [("a", Some("b")), ("c", None)])
            .unwrap();
        let r = preserve_check(&l, &h, &parse_formula("F G a").unwrap()).unwrap();
        assert!(r.equivalence_certified);
        assert!(!r.abstract_holds);
        assert!(!r.concrete_holds);
    }

    #[test]
    fn identity_agrees_with_maximal_words() {
        let l = eps_or_a();
        let h = Homomorphism::identity(l.alphabet());
        for text in ["F !a", "G F a", "F G eps", "G a | F G eps"] {
            let r = preserve_check(&l, &h, &parse_formula(text).unwrap()).unwrap();
            assert!(r.equivalence_certified);
            assert_eq!(r.abstract_holds, r.concrete_holds, "{text}");
        }
    }
}
