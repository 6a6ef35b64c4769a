use super::{Formula, Labeling};
use crate::automata::LassoWord;

struct Positions {
    n: usize,
    loop_start: usize,
}

impl Positions {
    fn succ(&self, i: usize) -> usize {
        if i + 1 == self.n {
            self.loop_start
        } else {
            i + 1
        }
    }

    /// Least fixpoint of `v = goal ∨ (stay ∧ X v)`.
    fn until(&self, stay: &[bool], goal: &[bool]) -> Vec<bool> {
        let mut v = goal.to_vec();
        loop {
            let mut changed = false;
            for i in (0..self.n).rev() {
                if !v[i] && stay[i] && v[self.succ(i)] {
                    v[i] = true;
                    changed = true;
                }
            }
            if !changed {
                return v;
            }
        }
    }

    fn next(&self, v: &[bool]) -> Vec<bool> {
        (0..self.n).map(|i| v[self.succ(i)]).collect()
    }
}

fn not(v: Vec<bool>) -> Vec<bool> {
    v.into_iter().map(|b| !b).collect()
}

fn zip(a: &[bool], b: &[bool], f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
}

fn eval(f: &Formula, x: &LassoWord, lambda: &Labeling, pos: &Positions) -> Vec<bool> {
    let e = |g: &Formula| eval(g, x, lambda, pos);
    match f {
        Formula::True => vec![true; pos.n],
        Formula::Atom(p) => (0..pos.n).map(|i| lambda.holds(x.at(i), p)).collect(),
        Formula::Not(g) => not(e(g)),
        Formula::And(a, b) => zip(&e(a), &e(b), |p, q| p && q),
        Formula::Or(a, b) => zip(&e(a), &e(b), |p, q| p || q),
        Formula::Implies(a, b) => zip(&e(a), &e(b), |p, q| !p || q),
        Formula::Iff(a, b) => zip(&e(a), &e(b), |p, q| p == q),
        Formula::Next(g) => pos.next(&e(g)),
        Formula::Until(a, b) => pos.until(&e(a), &e(b)),
        Formula::Before(a, b) => not(pos.until(&not(e(a)), &e(b))),
        Formula::Eventually(g) => pos.until(&vec![true; pos.n], &e(g)),
        Formula::Always(g) => not(pos.until(&vec![true; pos.n], &not(e(g)))),
    }
}

/// Truth of `f` on the lasso under `lambda`, by fixpoint evaluation over the
/// positions of stem and cycle.
pub fn evaluate_lasso(x: &LassoWord, lambda: &Labeling, f: &Formula) -> bool {
    let pos = Positions {
        n: x.stem().len() + x.cycle().len(),
        loop_start: x.stem().len(),
    };
    eval(f, x, lambda, &pos)[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::pltl::parse_formula;

    fn check(letters: &[&str], lasso: &str, f: &str) -> bool {
        let s = Alphabet::new(letters.iter().copied()).unwrap();
        let x = LassoWord::parse(lasso, &s).unwrap();
        evaluate_lasso(&x, &Labeling::canonical(&s), &parse_formula(f).unwrap())
    }

    #[test]
    fn semantics_examples() {
        assert!(check(&["a", "b"], ";a b", "G F a"));
        assert!(check(&["a", "b"], ";b", "a U b"));
        assert!(!check(&["a", "b"], ";b", "F a"));
        assert!(check(&["a", "b"], "a a;b", "F (a & X a)"));
        assert!(!check(&["a", "b"], ";a b", "F (a & X a)"));
        assert!(!check(&["a", "b"], ";a", "b B a"));
        assert!(check(&["a", "b"], "b;a", "b B a"));
        let fig = ["lock", "no", "reject", "request", "result"];
        assert!(!check(&fig, "lock;request no reject", "G F result"));
    }
}
