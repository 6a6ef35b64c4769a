use faircheck::abstraction::{
    abstract_behavior, apply_hom_lasso, compute_xtd, image_automaton, inverse_image_buchi, inverse_image_fin,
    is_weakly_continuation_closed, preserve_check, Extension, HomImage, Homomorphism,
};
use faircheck::alphabet::PAD;
use faircheck::automata::{language_equal, language_subset, lasso_membership, FinAutomaton, LassoWord};
use faircheck::error::Error;
use faircheck::sample::{letters, random_extended_formula, random_hom, random_lasso, random_lts, rng};
use faircheck_oracles::{lasso_accepts, preimage_lasso, wcc_counterexample};
use proptest::prelude::*;

fn instance(seed: u64, max_states: usize) -> (FinAutomaton, Homomorphism) {
    let mut r = rng(seed);
    let (src, tgt) = (letters(3), letters(2));
    let l = random_lts(&mut r, &src, max_states, 0.6);
    let h = random_hom(&mut r, &src, &tgt, 0.4);
    (l, h)
}

/// Restriction of a language over `Σ ∪ {#}` to words without `#`.
fn without_pad(a: &FinAutomaton, original: &FinAutomaton) -> FinAutomaton {
    let pad = a.alphabet().lookup(PAD).unwrap();
    let mut out = FinAutomaton::new(original.alphabet().clone());
    for q in a.states() {
        out.add_state(a.is_accepting(q));
    }
    for &q in a.initial() {
        out.add_initial(q);
    }
    for (p, s, q) in a.all_transitions() {
        if s != pad {
            let name = a.alphabet().name(s);
            out.add_transition(p, original.alphabet().lookup(name).unwrap(), q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn image_and_inverse_image(seed in any::<u64>()) {
        let (l, h) = instance(seed, 5);
        let img = image_automaton(&h, &l).unwrap();
        let back = inverse_image_fin(&h, &img).unwrap();
        prop_assert!(language_subset(&l, &back).unwrap().is_none());
        prop_assert!(img.is_prefix_closed());
        let mut r = rng(seed);
        for _ in 0..10 {
            let w = faircheck::sample::random_word(&mut r, l.alphabet(), 5);
            if l.accepts(&w) {
                prop_assert!(img.accepts(&h.apply_word(&w)));
            }
            prop_assert_eq!(back.accepts(&w), img.accepts(&h.apply_word(&w)));
        }
        let lim = img.limit().unwrap();
        let inv = inverse_image_buchi(&h, &lim).unwrap();
        for _ in 0..10 {
            let x = random_lasso(&mut r, l.alphabet(), 6);
            let expected = match apply_hom_lasso(&h, &x) {
                HomImage::Defined(y) => lasso_accepts(&lim, &y),
                HomImage::Undefined => false,
            };
            prop_assert_eq!(lasso_accepts(&inv, &x), expected);
        }
    }

    #[test]
    fn wcc_matches_definition(seed in any::<u64>()) {
        let (l, h) = instance(seed, 4);
        let report = is_weakly_continuation_closed(&l, &h).unwrap();
        let oracle = wcc_counterexample(&l, &h);
        prop_assert_eq!(report.closed, oracle.is_none());
        prop_assert_eq!(report.closed, report.violations.is_empty());
        if let Some(w) = oracle {
            prop_assert_eq!(&report.violations[0].word, &w);
        }
    }

    /// `lim(h(L)) = h(lim(L))` for prefix-closed `L`, on sampled lassos.
    #[test]
    fn limits_commute_with_images(seed in any::<u64>()) {
        let (l, h) = instance(seed, 5);
        let abs = abstract_behavior(&l, &h).unwrap();
        let conc = l.limit().unwrap();
        let mut r = rng(seed ^ 1);
        for _ in 0..8 {
            let y = random_lasso(&mut r, h.target(), 6);
            if lasso_accepts(&abs, &y) {
                let x = preimage_lasso(&conc, &h, &y);
                prop_assert!(x.is_some(), "no preimage of {}", y.render(h.target()));
                let x = x.unwrap();
                prop_assert!(lasso_accepts(&conc, &x));
                prop_assert_eq!(apply_hom_lasso(&h, &x), HomImage::Defined(y.normalized()));
            }
            let x = random_lasso(&mut r, l.alphabet(), 6);
            if lasso_accepts(&conc, &x) {
                if let HomImage::Defined(y) = apply_hom_lasso(&h, &x) {
                    prop_assert!(lasso_accepts(&abs, &y));
                }
            }
        }
    }

    #[test]
    fn padding_loses_nothing(seed in any::<u64>()) {
        let (l, h) = instance(seed, 5);
        for variant in [Extension::Plain, Extension::Relative(&h)] {
            let x = compute_xtd(&l, variant).unwrap();
            let pre = x.eilenberg_limit().prefix_automaton();
            prop_assert!(language_equal(&without_pad(&pre, &l), &l).unwrap());
        }
    }

    #[test]
    fn closed_abstractions_preserve_verdicts(seed in any::<u64>()) {
        let (l, h) = instance(seed, 4);
        let mut r = rng(seed ^ 2);
        let eta = random_extended_formula(&mut r, h.target().letters(), 3, 0.25);
        let report = preserve_check(&l, &h, &eta).unwrap();
        if report.equivalence_certified {
            prop_assert_eq!(report.abstract_holds, report.concrete_holds, "{}", eta);
        }
        if report.concrete_implies_abstract && report.concrete_holds {
            prop_assert!(report.abstract_holds);
        }
        let id = Homomorphism::identity(l.alphabet());
        let eta_id = random_extended_formula(&mut r, l.alphabet().letters(), 3, 0.25);
        let same = preserve_check(&l, &id, &eta_id).unwrap();
        prop_assert!(same.equivalence_certified);
        prop_assert_eq!(same.abstract_holds, same.concrete_holds);
    }
}

#[test]
fn a_star_b_counterexample() {
    let s = letters(2);
    let (a, b) = (s.lookup("a").unwrap(), s.lookup("b").unwrap());
    let l = FinAutomaton::from_parts(s.clone(), 2, [0], [1], [(0, a, 0), (0, b, 1)]).unwrap();
    let h = Homomorphism::from_pairs(&s, &letters(1), [("a", Some("a")), ("b", None)]).unwrap();
    assert_eq!(abstract_behavior(&l, &h).unwrap_err(), Error::NotPrefixClosed);
    let image_limit = image_automaton(&h, &l).unwrap().eilenberg_limit();
    let aw = LassoWord::parse(";a", &letters(1)).unwrap();
    assert!(lasso_membership(&aw, &image_limit));
    assert!(l.eilenberg_limit().is_empty());
}
