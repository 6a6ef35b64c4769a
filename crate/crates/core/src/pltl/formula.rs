use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::EPS;

/// PLTL abstract syntax. Derived operators are kept as constructors so that
/// formulas print the way they were written.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    /// `ξ B ζ ≡ ¬((¬ξ) U ζ)`
    Before(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Always(Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Atom(name.into())
    }

    pub fn eps() -> Formula {
        Atom(EPS.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Iff(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Formula {
        Next(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Until(Box::new(a), Box::new(b))
    }

    pub fn before(a: Formula, b: Formula) -> Formula {
        Before(Box::new(a), Box::new(b))
    }

    pub fn eventually(f: Formula) -> Formula {
        Eventually(Box::new(f))
    }

    pub fn always(f: Formula) -> Formula {
        Always(Box::new(f))
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            True | Atom(_) => vec![],
            Not(a) | Next(a) | Eventually(a) | Always(a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | Until(a, b) | Before(a, b) => {
                vec![a, b]
            }
        }
    }

    pub fn is_temporal_operator(&self) -> bool {
        matches!(self, Next(_) | Until(..) | Before(..) | Eventually(_) | Always(_))
    }

    /// No temporal operator anywhere in the formula.
    pub fn is_boolean(&self) -> bool {
        !self.is_temporal_operator() && self.children().into_iter().all(Formula::is_boolean)
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Atom(p) = self {
            out.insert(p.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// Replaces every occurrence of atom `from` by atom `to`.
    pub fn rename_atom(&self, from: &str, to: &str) -> Formula {
        self.map_atoms(&|p| if p == from { to.to_string() } else { p.to_string() })
    }

    fn map_atoms(&self, f: &dyn Fn(&str) -> String) -> Formula {
        let b = |x: &Formula| Box::new(x.map_atoms(f));
        match self {
            True => True,
            Atom(p) => Atom(f(p)),
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

    fn precedence(&self) -> u8 {
        match self {
            Iff(..) => 1,
            Implies(..) => 2,
            Or(..) => 3,
            And(..) => 4,
            Until(..) | Before(..) => 5,
            Not(_) | Next(_) | Eventually(_) | Always(_) => 6,
            True | Atom(_) => 7,
        }
    }
}

const UNARY: u8 = 6;

fn write_operand(f: &mut fmt::Formatter<'_>, sub: &Formula, min: u8) -> fmt::Result {
    if sub.precedence() < min {
        write!(f, "({sub})")
    } else {
        write!(f, "{sub}")
    }
}

impl fmt::Display for Formula {
    /// Minimal parentheses under the precedence `!,X,F,G > U,B > & > | > -> > <->`;
    /// `&`, `|` associate to the left, the others to the right.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        let (op, left_assoc) = match self {
            True => return write!(f, "true"),
            Atom(name) => return write!(f, "{name}"),
            Not(a) => {
                write!(f, "!")?;
                return write_operand(f, a, UNARY);
            }
            Next(a) | Eventually(a) | Always(a) => {
                let kw = match self {
                    Next(_) => "X",
                    Eventually(_) => "F",
                    _ => "G",
                };
                write!(f, "{kw} ")?;
                return write_operand(f, a, UNARY);
            }
            And(..) => ("&", true),
            Or(..) => ("|", true),
            Implies(..) => ("->", false),
            Iff(..) => ("<->", false),
            Until(..) => ("U", false),
            Before(..) => ("B", false),
        };
        let (l, r) = match self {
            And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r) | Until(l, r) | Before(l, r) => (l, r),
            _ => unreachable!(),
        };
        let (lmin, rmin) = if left_assoc { (p, p + 1) } else { (p + 1, p) };
        write_operand(f, l, lmin)?;
        write!(f, " {op} ")?;
        write_operand(f, r, rmin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_with_minimal_parentheses() {
        let a = || Formula::atom("a");
        let f = Formula::until(
            Formula::eps(),
            Formula::and(Formula::not(Formula::eps()), Formula::next(Formula::until(Formula::eps(), a()))),
        );
        assert_eq!(f.to_string(), "eps U (!eps & X (eps U a))");
        assert_eq!(Formula::always(Formula::eventually(Formula::atom("result"))).to_string(), "G F result");
        assert_eq!(
            Formula::and(Formula::and(a(), a()), Formula::and(a(), a())).to_string(),
            "a & a & (a & a)"
        );
        assert_eq!(Formula::not(Formula::or(a(), a())).to_string(), "!(a | a)");
    }

    #[test]
    fn boolean_detection() {
        let f = Formula::and(Formula::atom("a"), Formula::not(Formula::atom("b")));
        assert!(f.is_boolean());
        assert!(!Formula::eventually(f.clone()).is_boolean());
        assert_eq!(Formula::eventually(f).depth(), 4);
    }
}
