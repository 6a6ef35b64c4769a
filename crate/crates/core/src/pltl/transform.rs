use super::normal::{eps_only_under_always, is_positive};
use super::Formula;
use super::Formula::*;
use crate::alphabet::EPS;
use crate::error::{Error, Result};

/// The three formula transformations used when reasoning about hidden steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// `!a` becomes `!a & !eps` for every atom `a`.
    N,
    /// Rewrites temporal operators so that steps labelled `eps` are skipped.
    T,
    /// Like `T`, but maximal Boolean subformulas `b` become `eps U N(b)`.
    R,
}

/// Applies a transformation to a formula in (extended) normal form.
pub fn transform(f: &Formula, mode: Transform) -> Result<Formula> {
    if !is_positive(f) || !eps_only_under_always(f) {
        return Err(Error::NotNormalForm(format!(
            "`{f}` must be positive with `{EPS}` only inside `G {EPS}`"
        )));
    }
    Ok(match mode {
        Transform::N => n(f),
        Transform::T => t(f),
        Transform::R => r(f),
    })
}

fn eps() -> Formula {
    Formula::eps()
}

pub(crate) fn n(f: &Formula) -> Formula {
    let b = |x: &Formula| Box::new(n(x));
    match f {
        Not(g) if matches!(**g, Atom(_)) => {
            Formula::and(Formula::not((**g).clone()), Formula::not(eps()))
        }
        True | Atom(_) => f.clone(),
        Not(a) => Not(b(a)),
        And(x, y) => And(b(x), b(y)),
        Or(x, y) => Or(b(x), b(y)),
        Implies(x, y) => Implies(b(x), b(y)),
        Iff(x, y) => Iff(b(x), b(y)),
        Next(a) => Next(b(a)),
        Until(x, y) => Until(b(x), b(y)),
        Before(x, y) => Before(b(x), b(y)),
        Eventually(a) => Eventually(b(a)),
        Always(a) => Always(b(a)),
    }
}

/// One step of the `T` table with `rec` applied to the operands.
fn t_row(f: &Formula, rec: &dyn Fn(&Formula) -> Formula) -> Formula {
    match f {
        True | Atom(_) => f.clone(),
        Not(g) => match &**g {
            Atom(_) => Formula::and(f.clone(), Formula::not(eps())),
            True => f.clone(),
            other => Formula::not(rec(other)),
        },
        And(x, y) => Formula::and(rec(x), rec(y)),
        Or(x, y) => Formula::or(rec(x), rec(y)),
        Implies(x, y) => Formula::implies(rec(x), rec(y)),
        Iff(x, y) => Formula::iff(rec(x), rec(y)),
        Until(x, y) => Formula::until(Formula::or(eps(), rec(x)), rec(y)),
        Before(x, y) => Formula::before(rec(x), rec(y)),
        Eventually(x) => Formula::eventually(rec(x)),
        Always(x) => Formula::always(Formula::or(eps(), rec(x))),
        Next(x) => Formula::until(
            eps(),
            Formula::and(Formula::not(eps()), Formula::next(Formula::until(eps(), rec(x)))),
        ),
    }
}

pub(crate) fn t(f: &Formula) -> Formula {
    t_row(f, &t)
}

pub(crate) fn r(f: &Formula) -> Formula {
    if f.is_boolean() {
        Formula::until(eps(), n(f))
    } else {
        t_row(f, &r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pltl::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn table_rows() {
        assert_eq!(transform(&p("!a"), Transform::N).unwrap(), p("!a & !eps"));
        assert_eq!(
            transform(&p("X a"), Transform::T).unwrap().to_string(),
            "eps U (!eps & X (eps U a))"
        );
        assert_eq!(transform(&p("G a"), Transform::T).unwrap(), p("G (eps | a)"));
        assert_eq!(transform(&p("a U b"), Transform::T).unwrap(), p("(eps | a) U b"));
        assert_eq!(transform(&p("a & b"), Transform::R).unwrap(), p("eps U (a & b)"));
        assert_eq!(
            transform(&p("G F !a"), Transform::R).unwrap(),
            p("G (eps | F (eps U (!a & !eps)))")
        );
        assert_eq!(transform(&p("G eps"), Transform::T).unwrap(), p("G (eps | eps)"));
        assert_eq!(transform(&p("G eps"), Transform::R).unwrap(), p("G (eps | eps U eps)"));
    }

    #[test]
    fn rejects_non_normal_input() {
        assert!(transform(&p("!(a | b)"), Transform::T).is_err());
        assert!(transform(&p("F eps"), Transform::R).is_err());
        assert!(transform(&p("a -> b"), Transform::N).is_err());
    }
}
