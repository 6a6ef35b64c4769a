use num_rational::Ratio;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

use super::BuchiAutomaton;

pub type Rational = Ratio<u64>;

/// The ultimately periodic ω-word `stem·cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LassoWord {
    stem: Word,
    cycle: Word,
}

impl LassoWord {
    pub fn new(stem: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyCycle);
        }
        Ok(LassoWord { stem, cycle })
    }

    /// Parses `"stem letters;cycle letters"`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let (stem, cycle) = text
            .split_once(';')
            .ok_or_else(|| Error::InvalidArgument(format!("lasso `{text}` lacks `;`")))?;
        LassoWord::new(alphabet.parse_word(stem)?, alphabet.parse_word(cycle)?)
    }

    pub fn stem(&self) -> &[Symbol] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Symbol] {
        &self.cycle
    }

    /// `|stem| + |cycle|`.
    pub fn size(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    /// Letter at 0-based position `i` of the ω-word.
    pub fn at(&self, i: usize) -> Symbol {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// First `n` letters of the ω-word.
    pub fn prefix(&self, n: usize) -> Word {
        (0..n).map(|i| self.at(i)).collect()
    }

    pub fn letters(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.stem.iter().chain(self.cycle.iter()).copied()
    }

    /// Canonical representative: primitive cycle and shortest stem. Two
    /// lassos denote the same ω-word iff their normal forms are equal.
    pub fn normalized(&self) -> LassoWord {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.cycle[i] == self.cycle[i - p]))
            .unwrap_or(n);
        let mut stem = self.stem.clone();
        let mut cycle: Word = self.cycle[..period].to_vec();
        while let (Some(&s), Some(&c)) = (stem.last(), cycle.last()) {
            if s != c {
                break;
            }
            stem.pop();
            cycle.rotate_right(1);
        }
        LassoWord { stem, cycle }
    }

    /// Deterministic automaton accepting exactly this ω-word (all states
    /// accepting).
    pub fn automaton(&self, alphabet: Alphabet) -> BuchiAutomaton {
        let n = self.size();
        let transitions = (0..n).map(|i| {
            let next = if i + 1 == n { self.stem.len() } else { i + 1 };
            (i, self.at(i), next)
        });
        BuchiAutomaton::from_parts(alphabet, n, [0], 0..n, transitions)
            .expect("lasso letters belong to the alphabet")
    }

    /// Rewrites every letter through `f`.
    pub fn map(&self, f: impl Fn(Symbol) -> Symbol) -> LassoWord {
        LassoWord {
            stem: self.stem.iter().map(|&s| f(s)).collect(),
            cycle: self.cycle.iter().map(|&s| f(s)).collect(),
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        format!("{};{}", alphabet.render(&self.stem), alphabet.render(&self.cycle))
    }

    /// Human-readable form, e.g. `lock·(request·no·reject)^ω`.
    pub fn pretty(&self, alphabet: &Alphabet) -> String {
        let join = |w: &[Symbol]| {
            w.iter()
                .map(|&s| alphabet.name(s))
                .collect::<Vec<_>>()
                .join("·")
        };
        let cyc = if self.cycle.len() == 1 {
            format!("{}^ω", join(&self.cycle))
        } else {
            format!("({})^ω", join(&self.cycle))
        };
        if self.stem.is_empty() {
            cyc
        } else {
            format!("{}·{}", join(&self.stem), cyc)
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cantor distance `1 / (|common prefix| + 1)`, and 0 for equal words.
pub fn cantor_distance(x: &LassoWord, y: &LassoWord) -> Rational {
    let (x, y) = (x.normalized(), y.normalized());
    if x == y {
        return Rational::from_integer(0);
    }
    let (cx, cy) = (x.cycle.len(), y.cycle.len());
    // Two ultimately periodic words agreeing this far agree everywhere.
    let bound = x.stem.len().max(y.stem.len()) + cx / gcd(cx, cy) * cy;
    let common = (0..bound)
        .find(|&i| x.at(i) != y.at(i))
        .expect("distinct normal forms differ within the bound");
    Rational::new(1, common as u64 + 1)
}
