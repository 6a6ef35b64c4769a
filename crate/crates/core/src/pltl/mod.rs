//! Propositional linear-time temporal logic: syntax, positive and
//! alphabet normal forms, the hiding transformations, lasso semantics and
//! translation to Büchi automata.

mod eval;
mod formula;
mod labeling;
mod normal;
mod parse;
mod tableau;
mod transform;

pub use eval::evaluate_lasso;
pub use formula::Formula;
pub use labeling::Labeling;
pub use normal::{check_normal_form, is_positive, to_positive_normal_form, NormalForm};
pub use parse::parse_formula;
pub use tableau::{formula_automaton, to_buchi, FormulaAutomata};
pub use transform::{transform, Transform};
